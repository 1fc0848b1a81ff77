"""Chebyshev polynomials and series, Hermite functions.

Hermite functions use the L2-orthonormal normalisation
``psi_n(x) = H_n(x) exp(-x^2/2) / sqrt(2^n n! sqrt(pi))``.  The constant
``(sqrt(2 pi) n!)^(-1/2)`` is also available (``convention="alternate"``);
it does not give unit norm and is kept only for comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, EvaluationError

HERMITE_CONVENTIONS = ("orthonormal", "alternate")


def chebyshev_T(k, x):
    """``T_k(x) = cos(k arccos x)`` for ``|x| <= 1``."""
    k = int(k)
    if k < 0:
        raise DomainError("k must be nonnegative")
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) > 1.0) or not np.all(np.isfinite(xa)):
        raise DomainError("Chebyshev T_k is evaluated only on [-1, 1]")
    out = np.cos(k * np.arccos(xa))
    return float(out) if out.ndim == 0 else out


def chebyshev_T_recurrence(k, x):
    """``T_k`` via ``T_{j+1} = 2x T_j - T_{j-1}``; valid for any real x."""
    x = np.asarray(x, dtype=float)
    prev, cur = np.ones_like(x), x.copy()
    if k == 0:
        return prev
    for _ in range(k - 1):
        prev, cur = cur, 2 * x * cur - prev
    return cur


@dataclass(frozen=True, eq=False)
class ChebyshevSeries:
    """Coefficients ``a_0..a_m`` of ``sum_j a_j T_j(x)`` on [-1, 1].

    Trailing coefficients with magnitude ``<= floor`` are trimmed on
    construction (at least ``a_0`` is kept).
    """

    coefficients: np.ndarray
    floor: float = 0.0

    def __post_init__(self):
        a = np.array(self.coefficients, dtype=float)
        last = len(a)
        while last > 1 and abs(a[last - 1]) <= self.floor:
            last -= 1
        a = a[:last]
        a.setflags(write=False)
        object.__setattr__(self, "coefficients", a)

    @property
    def degree(self):
        return len(self.coefficients) - 1

    def coefficient(self, j):
        return float(self.coefficients[j]) if j <= self.degree else 0.0

    def __call__(self, x):
        # Clenshaw recurrence
        x = np.asarray(x, dtype=float)
        b1 = np.zeros_like(x)
        b2 = np.zeros_like(x)
        for a in self.coefficients[:0:-1]:
            b1, b2 = 2 * x * b1 - b2 + a, b1
        return x * b1 - b2 + self.coefficients[0]


def chebyshev_points(m):
    """The m+1 points ``cos(j pi / m)``, j = 0..m."""
    return np.cos(np.pi * np.arange(m + 1) / m)


def chebyshev_coefficients(f, m, floor=0.0):
    """Coefficients of the degree-m interpolant of f at m+1 Chebyshev points.

    Direct cosine sums; ``m`` is expected to stay at a few hundred.
    """
    m = int(m)
    if m < 1:
        raise DomainError("m must be >= 1")
    fn = getattr(f, "evaluator", f)
    x = chebyshev_points(m)
    with np.errstate(all="ignore"):
        v = np.asarray(fn(x), dtype=float) * np.ones_like(x)
    if not np.all(np.isfinite(v)):
        j = int(np.argmax(~np.isfinite(v)))
        raise EvaluationError(f"integrand not finite at x = {x[j]!r}")
    v = v.copy()
    v[0] *= 0.5
    v[-1] *= 0.5
    jk = np.outer(np.arange(m + 1), np.arange(m + 1))
    a = (2.0 / m) * (np.cos(np.pi * jk / m) @ v)
    a[0] *= 0.5
    a[-1] *= 0.5
    return ChebyshevSeries(a, floor)


def log_hermite_constant(n, convention="orthonormal"):
    if convention == "orthonormal":
        return -0.5 * (n * math.log(2.0) + math.lgamma(n + 1)
                       + 0.5 * math.log(math.pi))
    if convention == "alternate":
        return -0.5 * (0.5 * math.log(2 * math.pi) + math.lgamma(n + 1))
    raise ValueError(f"unknown convention {convention!r}")


def hermite_constant(n, convention="orthonormal"):
    """Normalising constant multiplying ``H_n(x) exp(-x^2/2)``."""
    return math.exp(log_hermite_constant(n, convention))


def hermite_psi(n, x, convention="orthonormal"):
    """Hermite function ``psi_n(x)``.

    Runs the orthonormal recurrence
    ``psi_{k+1} = sqrt(2/(k+1)) x psi_k - sqrt(k/(k+1)) psi_{k-1}`` starting
    from ``pi^(-1/4) exp(-x^2/2)``, with the Gaussian factor held as a
    separate logarithmic scale and folded back only at the end.
    """
    n = int(n)
    if not 0 <= n <= 500:
        raise DomainError("hermite_psi supports 0 <= n <= 500")
    xa = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(xa)):
        raise DomainError("x must be finite")
    log_scale = -0.5 * xa * xa
    prev = np.zeros_like(xa)
    cur = np.full_like(xa, math.pi ** -0.25)
    for k in range(n):
        prev, cur = cur, (math.sqrt(2.0 / (k + 1)) * xa * cur
                          - math.sqrt(k / (k + 1)) * prev)
        big = np.abs(cur) > 1e150
        if np.any(big):
            c = np.where(big, np.abs(cur), 1.0)
            prev, cur = prev / c, cur / c
            log_scale = log_scale + np.log(c)
    with np.errstate(under="ignore", over="ignore"):
        out = cur * np.exp(log_scale)
    if not np.all(np.isfinite(out)):
        raise EvaluationError(f"psi_{n} overflowed")
    if convention != "orthonormal":
        out = out * math.exp(log_hermite_constant(n, convention)
                             - log_hermite_constant(n))
    return float(out) if out.ndim == 0 else out


def monomial_gaussian_max(n):
    """Location and value of the maximum of ``x^n exp(-x^2)`` on x > 0."""
    n = int(n)
    if n < 1:
        raise DomainError("n must be >= 1")
    return math.sqrt(n / 2), (n / (2 * math.e)) ** (n / 2)
