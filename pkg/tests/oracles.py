"""Reference computations that do not go through kafourier's own machinery.

Each oracle uses a different route than the package: adaptive quadrature
instead of Gauss rules, the classical Hermite recurrence instead of the
moment-based one, explicit Runge-Kutta instead of Picard iteration.
"""
import math

import numpy as np
from scipy import integrate, special


def calibration_quad(k, a):
    """int_R |x|^{2k+a-2} exp(-(2/a)|x|^a) dx by adaptive quadrature."""
    beta = 2 * k + a - 2

    def f(x):
        return x**beta * math.exp(-(2 / a) * x**a)

    # split at 1 so the algebraic singularity at 0 and the tail are separate
    head, _ = integrate.quad(f, 0, 1, limit=200, epsabs=0, epsrel=1e-13)
    tail, _ = integrate.quad(f, 1, np.inf, limit=200, epsabs=0, epsrel=1e-13)
    return 2 * (head + tail)


def calibration_closed_form(k, a):
    s = 2 * k + a - 1
    return 2 * (1 / a) * (a / 2) ** (s / a) * special.gamma(s / a)


def ball_measure_quad(k, a, R):
    """mu_{k,a}{|x| <= R} in one dimension."""
    beta = 2 * k + a - 2
    val, _ = integrate.quad(lambda x: x**beta, 0, R, epsabs=0, epsrel=1e-13)
    return 2 * val


def hermite_functions(n, x):
    """Orthonormal Hermite functions h_0..h_{n-1} at x, shape (n, len(x))."""
    x = np.asarray(x, dtype=float)
    out = np.zeros((n, x.size))
    out[0] = math.pi**-0.25 * np.exp(-(x**2) / 2)
    if n > 1:
        out[1] = math.sqrt(2) * x * out[0]
    for j in range(1, n - 1):
        out[j + 1] = math.sqrt(2 / (j + 1)) * x * out[j] - math.sqrt(j / (j + 1)) * out[j - 1]
    return out


def rk4(f, y0, times, substeps=8):
    """Classical RK4 on the given output grid with equal substeps."""
    y = np.asarray(y0, dtype=float)
    out = [y]
    for t0, t1 in zip(times[:-1], times[1:]):
        h = (t1 - t0) / substeps
        for _ in range(substeps):
            k1 = f(y)
            k2 = f(y + 0.5 * h * k1)
            k3 = f(y + 0.5 * h * k2)
            k4 = f(y + h * k3)
            y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        out.append(y)
    return np.array(out)


def heat_rk4(u0_grid, times, p):
    """Pointwise u' = |u|^p on the quadrature grid (B = identity)."""
    return rk4(lambda y: np.abs(y) ** p, u0_grid, times)


def wave_rk4(u0_grid, u1_grid, times, p, beta=1.0):
    """Pointwise u'' = beta |u|^p as a first-order system; returns u."""
    n = len(u0_grid)

    def f(y):
        return np.concatenate([y[n:], beta * np.abs(y[:n]) ** p])

    return rk4(f, np.concatenate([u0_grid, u1_grid]), times)[:, :n]


def sup_l2(diff_grid, weights):
    return float(np.max(np.sqrt(np.abs(diff_grid) ** 2 @ weights)))
