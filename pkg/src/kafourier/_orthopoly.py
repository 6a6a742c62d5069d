"""Orthonormal polynomials for the symmetric weight |x|**beta * exp(-(2/a)|x|**a).

The recurrence coefficients are obtained from the closed-form moments with
Chebyshev's algorithm in extended precision (mpmath); everything downstream
runs in double precision.
"""
from functools import lru_cache

import mpmath
import numpy as np
from scipy.linalg import eigh_tridiagonal


def moment(j, beta, a):
    """``int_R x**j |x|**beta exp(-(2/a)|x|**a) dx`` as an mpmath number."""
    if j % 2:
        return mpmath.mpf(0)
    s = (mpmath.mpf(beta) + j + 1) / a
    return 2 / mpmath.mpf(a) * (mpmath.mpf(a) / 2) ** s * mpmath.gamma(s)


@lru_cache(maxsize=64)
def _recurrence(beta, a, n):
    with mpmath.workdps(50 + n):
        a_mp = mpmath.mpf(a)
        m = [moment(j, beta, a_mp) for j in range(2 * n)]
        b = [m[0]]
        alpha_prev = m[1] / m[0]
        sig_prev = [mpmath.mpf(0)] * (2 * n)
        sig = list(m)
        for k in range(1, n):
            new = [mpmath.mpf(0)] * (2 * n)
            for ell in range(k, 2 * n - k):
                new[ell] = sig[ell + 1] - alpha_prev * sig[ell] - b[k - 1] * sig_prev[ell]
            alpha_prev = new[k + 1] / new[k] - sig[k] / sig[k - 1]
            b.append(new[k] / sig[k - 1])
            sig_prev, sig = sig, new
        # symmetric weight: all diagonal coefficients vanish
        out = np.array([float(mpmath.sqrt(v)) for v in b])
    out.setflags(write=False)
    return out


def recurrence(beta, a, n):
    """Return ``sqrt(b_0), ..., sqrt(b_{n-1})`` of the monic recurrence.

    ``sqrt(b_0)`` is the square root of the total mass.
    """
    return _recurrence(float(beta), float(a), int(n))


def evaluate(sqrt_b, n, x, derivatives=0, scale=None):
    """Values (and derivatives) of the first ``n`` orthonormal polynomials.

    Every value is multiplied by ``scale`` (broadcast against ``x``), which
    keeps ``p_j(x) * exp(-|x|**a / a)`` finite where ``p_j(x)`` alone would
    overflow.  Returns an array of shape ``(derivatives + 1, n) + x.shape``.
    """
    x = np.asarray(x, dtype=float)
    out = np.zeros((derivatives + 1, n) + x.shape)
    out[0, 0] = (1.0 if scale is None else scale) / sqrt_b[0]
    for j in range(n - 1):
        prev = out[:, j - 1] if j > 0 else np.zeros_like(out[:, 0])
        sb_prev = sqrt_b[j] if j > 0 else 0.0
        for d in range(derivatives + 1):
            val = x * out[d, j] - sb_prev * prev[d]
            if d:
                val = val + d * out[d - 1, j]
            out[d, j + 1] = val / sqrt_b[j + 1]
    return out


def envelope(x, a):
    """``exp(-|x|**a / a)``."""
    return np.exp(-np.abs(x) ** a / a)


def _log_christoffel(sqrt_b, n, x):
    """``log sum_j p_j(x)**2`` over the orthonormal polynomials, rescaling on
    the fly so that far nodes neither overflow nor underflow."""
    prev = np.zeros_like(x)
    cur = np.full_like(x, 1.0 / sqrt_b[0])
    total = cur * cur
    log_scale = np.zeros_like(x)
    for j in range(n - 1):
        sb_prev = sqrt_b[j] if j > 0 else 0.0
        prev, cur = cur, (x * cur - sb_prev * prev) / sqrt_b[j + 1]
        total = total + cur * cur
        big = total > 1e200
        if np.any(big):
            f = np.where(big, 1e-100, 1.0)
            prev, cur, total = prev * f, cur * f, total * f * f
            log_scale = log_scale + np.where(big, 100 * np.log(10.0), 0.0)
    return np.log(total) + 2 * log_scale


def gauss_rule(beta, a, n):
    """Symmetric Gauss rule with ``n`` (even) nodes.

    The weights integrate against ``|x|**beta dx``: the Gaussian weights of
    ``|x|**beta exp(-(2/a)|x|**a)`` multiplied by ``exp((2/a)|x|**a)``, which
    is exact for ``polynomial * exp(-(2/a)|x|**a)`` up to degree ``2n - 1``.
    """
    if n % 2:
        raise ValueError("n must be even so that x = 0 is not a node")
    sqrt_b = recurrence(beta, a, n)
    nodes = eigh_tridiagonal(np.zeros(n), sqrt_b[1:n], eigvals_only=True)
    nodes = np.sort(nodes)
    nodes = 0.5 * (nodes - nodes[::-1])
    log_sum = _log_christoffel(sqrt_b, n, nodes)
    weights = np.exp((2.0 / a) * np.abs(nodes) ** a - log_sum)
    weights = 0.5 * (weights + weights[::-1])
    return nodes, weights
