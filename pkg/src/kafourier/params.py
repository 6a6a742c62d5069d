"""Parameter validation for the (k, a)-generalised Fourier transform.

Only the rank-one reflection group Z_2 is modelled in one dimension, where
``<k> = k`` and the weight is ``|x|**(2k)``.  For ``N >= 2`` the multiplicity
is passed directly as ``<k>`` and only radial profiles are supported.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .exceptions import InadmissibleParams

__all__ = ["Params", "AdmissibilityReport", "validate", "CASE_LABELS"]

CASE_LABELS = ("N1_any_a", "a_eq_1", "a_eq_2", "k0_a_2_over_m")

_RATIONAL_TOL = 1e-12
_MAX_DENOMINATOR = 64


def _close(x, y, tol=_RATIONAL_TOL):
    return abs(x - y) <= tol


def _two_over_m(a):
    """Return the integer m with a == 2/m (m <= 64), or None."""
    for m in range(1, _MAX_DENOMINATOR + 1):
        if _close(a, 2.0 / m):
            return m
    return None


@dataclass(frozen=True)
class Params:
    """Dimension ``N``, multiplicity ``k`` (the index ``<k>``) and deformation ``a``.

    Parameters
    ----------
    N : int
        Dimension, ``N >= 1``.
    k : float
        Multiplicity index ``<k> >= 0``.
    a : float
        Deformation parameter, ``a > 0``.
    radial : bool
        Restrict to radial profiles.  Mandatory for ``N >= 2``.
    """

    N: int
    k: float
    a: float
    radial: bool = False

    def __post_init__(self):
        N, k, a = self.N, self.k, self.a
        if int(N) != N or N < 1:
            raise InadmissibleParams(f"N must be a positive integer, got {N!r}")
        if not (math.isfinite(k) and math.isfinite(a)):
            raise InadmissibleParams("k and a must be finite")
        if a <= 0:
            raise InadmissibleParams(f"a must be positive, got {a}")
        if k < 0:
            raise InadmissibleParams(f"k must be non-negative, got {k}")
        if a + 2 * k + N - 2 <= 0:
            raise InadmissibleParams(
                f"a + 2<k> + N - 2 = {a + 2 * k + N - 2:g} must be > 0"
            )
        object.__setattr__(self, "N", int(N))
        object.__setattr__(self, "k", float(k))
        object.__setattr__(self, "a", float(a))
        if self.N >= 2:
            object.__setattr__(self, "radial", True)

    @property
    def k_index(self):
        return self.k

    @property
    def D(self):
        """Homogeneous dimension ``2<k> + N + a - 2``."""
        return 2 * self.k + self.N + self.a - 2

    @property
    def k_eff(self):
        # radial profiles in N dimensions behave like even 1D functions with
        # multiplicity <k> + (N - 1)/2
        return self.k + (self.N - 1) / 2

    @property
    def sphere_factor(self):
        """Angular mass: 2 on the line (two half-lines), 1 in radial mode."""
        return 1.0 if self.radial else 2.0

    @property
    def phase(self):
        return complex(
            math.cos(math.pi * self.D / (2 * self.a)),
            math.sin(math.pi * self.D / (2 * self.a)),
        )

    def report(self):
        return validate(self.N, self.k, self.a)


@dataclass(frozen=True)
class AdmissibilityReport:
    params: Params
    admissible: bool
    bounded_kernel_cases: frozenset = field(default_factory=frozenset)
    conjecture_regime: bool = False
    notes: str = ""

    def to_dict(self):
        return {
            "N": self.params.N,
            "k": self.params.k,
            "a": self.params.a,
            "k_index": self.params.k_index,
            "D": self.params.D,
            "admissible": self.admissible,
            "bounded_kernel_cases": sorted(self.bounded_kernel_cases),
            "conjecture_regime": self.conjecture_regime,
            "notes": self.notes,
        }

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)


def validate(N, k, a):
    """Check ``(N, k, a)`` and list the kernel-boundedness regimes that apply.

    Raises
    ------
    InadmissibleParams
        If ``a <= 0``, ``k < 0`` or ``a + 2<k> + N - 2 <= 0``.
    """
    params = Params(N, k, a)
    N, k, a = params.N, params.k, params.a

    cases = set()
    if N == 1:
        cases.add("N1_any_a")
    if _close(a, 1.0) and 2 * k + N - 2 >= 0:
        cases.add("a_eq_1")
    if _close(a, 2.0):
        cases.add("a_eq_2")
    m = _two_over_m(a)
    if k == 0 and m is not None:
        cases.add("k0_a_2_over_m")
    conjecture = a + 2 * k + N - 3 >= 0

    notes = []
    if cases:
        notes.append("kernel uniformly bounded: " + ", ".join(sorted(cases)))
    if conjecture:
        notes.append(
            "conjecture regime a+2<k>+N-3 >= 0 (|B| <= 1 conjectured, not asserted)"
        )
    if not cases and not conjecture:
        notes.append("no kernel-boundedness regime applies")
    return AdmissibilityReport(
        params=params,
        admissible=bool(cases) or conjecture,
        bounded_kernel_cases=frozenset(cases),
        conjecture_regime=conjecture,
        notes="; ".join(notes),
    )
