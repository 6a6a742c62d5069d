"""Radial symbols and weights: closed-form descriptors or sampled values.

A :class:`MultiplierSymbol` serves both as the weight ``psi`` of the Paley
type inequalities and as the symbol ``h`` of a Fourier multiplier.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .exceptions import SymbolSpecError

__all__ = ["MultiplierSymbol", "parse_symbol"]

_KINDS = ("power", "indicator", "constant", "sampled", "composite")


@dataclass(frozen=True)
class MultiplierSymbol:
    """Symbol ``xi -> coef * profile(|xi|)``.

    Use the constructors :meth:`power`, :meth:`indicator`, :meth:`constant`,
    :meth:`sampled` and the ``*`` operator (pointwise product) rather than
    instantiating directly.
    """

    kind: str
    coef: float = 1.0
    gamma: float | None = None
    R: float | None = None
    nodes: np.ndarray | None = field(default=None, repr=False, compare=False)
    values: np.ndarray | None = field(default=None, repr=False, compare=False)
    weights: np.ndarray | None = field(default=None, repr=False, compare=False)
    factors: tuple = ()

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise SymbolSpecError(f"unknown symbol kind {self.kind!r}")
        if self.kind == "power" and not (self.gamma is not None and self.gamma > 0):
            raise SymbolSpecError("power symbols need gamma > 0")
        if self.kind == "indicator" and not (self.R is not None and self.R > 0):
            raise SymbolSpecError("indicator symbols need R > 0")
        if self.kind == "sampled":
            if self.nodes is None or self.values is None:
                raise SymbolSpecError("sampled symbols need nodes and values")
            if len(self.nodes) != len(self.values):
                raise SymbolSpecError("sampled nodes and values differ in length")

    # -- constructors -----------------------------------------------------
    @classmethod
    def power(cls, gamma, coef=1.0):
        return cls("power", coef=float(coef), gamma=float(gamma))

    @classmethod
    def indicator(cls, R, coef=1.0):
        return cls("indicator", coef=float(coef), R=float(R))

    @classmethod
    def constant(cls, value=1.0):
        return cls("constant", coef=float(value))

    @classmethod
    def sampled(cls, nodes, values, weights=None):
        """Symbol known only at ``nodes``; ``weights`` (optional) make it
        self-sufficient for level-set measures."""
        nodes = np.asarray(nodes, dtype=float)
        values = np.asarray(values)
        order = np.argsort(nodes)
        w = None if weights is None else np.asarray(weights, dtype=float)[order]
        return cls("sampled", nodes=nodes[order], values=values[order], weights=w)

    @classmethod
    def on_rule(cls, rule, func):
        """Sample ``func`` on a quadrature rule's nodes."""
        return cls.sampled(rule.nodes, func(rule.nodes), rule.weights)

    # -- algebra ----------------------------------------------------------
    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return self.scaled(other)
        if not isinstance(other, MultiplierSymbol):
            return NotImplemented
        if self.kind == "constant":
            return other.scaled(self.coef)
        if other.kind == "constant":
            return self.scaled(other.coef)
        left = self.factors if self.kind == "composite" else (self,)
        right = other.factors if other.kind == "composite" else (other,)
        return MultiplierSymbol("composite", factors=left + right)

    __rmul__ = __mul__

    def scaled(self, c):
        if self.kind == "sampled":
            return MultiplierSymbol.sampled(self.nodes, c * self.values, self.weights)
        if self.kind == "composite":
            head, *rest = self.factors
            return MultiplierSymbol("composite", factors=(head.scaled(c), *rest))
        return MultiplierSymbol(
            self.kind, coef=self.coef * c, gamma=self.gamma, R=self.R
        )

    # -- evaluation -------------------------------------------------------
    @property
    def is_radial_monotone(self):
        """True when ``|symbol|`` is a non-increasing function of ``|xi|``."""
        if self.kind == "composite":
            return all(f.is_radial_monotone for f in self.factors)
        return self.kind in ("power", "indicator", "constant")

    def __call__(self, xi):
        xi = np.asarray(xi, dtype=float)
        r = np.abs(xi)
        if self.kind == "power":
            with np.errstate(divide="ignore", over="ignore"):
                return self.coef * r ** (-self.gamma)
        if self.kind == "indicator":
            return np.where(r <= self.R, self.coef, 0.0)
        if self.kind == "constant":
            return np.full(xi.shape, self.coef)
        if self.kind == "composite":
            out = np.ones(xi.shape)
            for f in self.factors:
                out = out * f(xi)
            return out
        return self._interp(xi)

    def _interp(self, xi):
        # exact on the sampling nodes; linear in between, zero outside
        vals = self.values
        if np.iscomplexobj(vals):
            re = np.interp(xi, self.nodes, vals.real, left=0.0, right=0.0)
            im = np.interp(xi, self.nodes, vals.imag, left=0.0, right=0.0)
            return re + 1j * im
        return np.interp(xi, self.nodes, vals, left=0.0, right=0.0)

    def radius(self, t):
        """Radius of the ball ``{|symbol| >= t}`` for radial monotone symbols.

        Returns ``inf`` for an unbounded superlevel set and ``0`` for an
        empty one.
        """
        if self.kind == "power":
            c = abs(self.coef)
            return 0.0 if c == 0 else (c / t) ** (1.0 / self.gamma)
        if self.kind == "indicator":
            return self.R if abs(self.coef) >= t else 0.0
        if self.kind == "constant":
            return math.inf if abs(self.coef) >= t else 0.0
        if self.kind == "composite":
            return self._composite_radius(t)
        raise SymbolSpecError("sampled symbols have no closed-form radius")

    def _composite_radius(self, t):
        # largest r with |product(r)| >= t; the profile is non-increasing
        def prof(r):
            return abs(float(self(np.array([r]))[0]))

        supports = [f.R for f in self.factors if f.kind == "indicator"]
        hi = min(supports) if supports else math.inf
        if not math.isinf(hi) and prof(hi) >= t:
            return hi
        if math.isinf(hi):
            hi = 1.0
            while prof(hi) >= t:
                hi *= 2.0
                if hi > 1e300:
                    return math.inf
        lo = 0.0
        if prof(np.nextafter(0.0, 1.0)) < t:
            return 0.0
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if prof(mid) >= t:
                lo = mid
            else:
                hi = mid
            if hi - lo <= 1e-15 * hi:
                break
        return lo

    def describe(self):
        if self.kind == "power":
            return f"power:gamma={self.gamma:g},coef={self.coef:g}"
        if self.kind == "indicator":
            return f"indicator:R={self.R:g},coef={self.coef:g}"
        if self.kind == "constant":
            return f"const:{self.coef:g}"
        if self.kind == "composite":
            return "*".join(f.describe() for f in self.factors)
        return f"sampled:{len(self.nodes)}"


def _kv(body):
    out = {}
    for item in filter(None, body.split(",")):
        if "=" not in item:
            raise SymbolSpecError(f"expected key=value, got {item!r}")
        key, val = item.split("=", 1)
        try:
            out[key.strip()] = float(val)
        except ValueError:
            raise SymbolSpecError(f"non-numeric value in {item!r}") from None
    return out


def parse_symbol(spec):
    """Parse the symbol mini-language.

    ``power:gamma=2``, ``indicator:R=1``, ``const:1`` (or ``one``),
    ``sampled:<path>`` (CSV with ``node,value`` rows), with an optional
    ``coef=`` key and ``*`` for products.
    """
    spec = spec.strip()
    if "*" in spec:
        parts = [parse_symbol(s) for s in spec.split("*")]
        out = parts[0]
        for p in parts[1:]:
            out = out * p
        return out
    head, _, body = spec.partition(":")
    head = head.strip().lower()
    if head in ("one", "identity"):
        return MultiplierSymbol.constant(1.0)
    if head in ("zero",):
        return MultiplierSymbol.constant(0.0)
    if head in ("const", "constant"):
        try:
            return MultiplierSymbol.constant(float(body))
        except ValueError:
            kv = _kv(body)
            return MultiplierSymbol.constant(kv.get("value", kv.get("c", 1.0)))
    if head == "power":
        kv = _kv(body)
        if "gamma" not in kv:
            raise SymbolSpecError("power symbol needs gamma=")
        return MultiplierSymbol.power(kv["gamma"], kv.get("coef", 1.0))
    if head == "indicator":
        kv = _kv(body)
        return MultiplierSymbol.indicator(kv.get("R", 1.0), kv.get("coef", 1.0))
    if head == "sampled":
        path = Path(body)
        if not path.exists():
            raise SymbolSpecError(f"no such file: {body}")
        data = np.genfromtxt(path, delimiter=",", comments="#", ndmin=2)
        if data.ndim != 2 or data.shape[1] < 2:
            raise SymbolSpecError("sampled CSV needs node,value columns")
        data = data[~np.isnan(data[:, :2]).any(axis=1)]
        if not len(data):
            raise SymbolSpecError("sampled CSV needs node,value columns")
        return MultiplierSymbol.sampled(data[:, 0], data[:, 1])
    raise SymbolSpecError(f"cannot parse symbol spec {spec!r}")
