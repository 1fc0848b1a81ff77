"""Coefficient counts for multivariate polynomials: total vs Euclidean degree.

The continuous counts are volume approximations for large degree d:

    N_euclidean = d^s pi^(s/2) / (2^s (s/2)!)     (positive orthant of a ball)
    N_total     = d^s s^(s/2) / s!

and their ratio ``(s/2)!/s! (4s/pi)^(s/2)`` does not depend on d.  Exact
lattice counts are provided separately to probe the approximation.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

MAX_RATIO_S = 100
MAX_LATTICE_S = 6
MAX_LATTICE_D = 60


class Norm(str, enum.Enum):
    TOTAL = "total"
    EUCLIDEAN = "euclidean"
    MAX = "max"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise DomainError(f"unknown norm {value!r}") from None


def _check_s(s, upper=MAX_RATIO_S):
    s = int(s)
    if not 1 <= s <= upper:
        raise DomainError(f"dimension must satisfy 1 <= s <= {upper}, got {s}")
    return s


def log_n_euclidean(s, d):
    return (s * math.log(d) + 0.5 * s * math.log(math.pi)
            - s * math.log(2.0) - math.lgamma(0.5 * s + 1))


def log_n_total(s, d):
    return s * math.log(d) + 0.5 * s * math.log(s) - math.lgamma(s + 1)


def log_inefficiency_ratio(s):
    s = _check_s(s)
    return (math.lgamma(0.5 * s + 1) - math.lgamma(s + 1)
            + 0.5 * s * math.log(4 * s / math.pi))


def inefficiency_ratio(s):
    """``N_total / N_euclidean`` for dimension s, evaluated through log-gamma."""
    return math.exp(log_inefficiency_ratio(s))


def ratio_asymptotic(s):
    """Large-s form ``(1/sqrt 2) (2e/pi)^(s/2)``."""
    s = _check_s(s)
    return math.exp(0.5 * s * math.log(2 * math.e / math.pi)) / math.sqrt(2)


def ratio_heuristic(s):
    """The rough rule of thumb ``1.3^(s-1)``."""
    return 1.3 ** (_check_s(s) - 1)


@dataclass(frozen=True)
class DegreeCount:
    s: int
    d_limit: float
    n_euclidean: float
    n_total: float
    ratio: float


def degree_count(s, d):
    """Continuous counts at degree d (real-valued, may be huge)."""
    s = _check_s(s)
    d = float(d)
    if not d > 0:
        raise DomainError("degree must be positive")
    ne = math.exp(log_n_euclidean(s, d))
    nt = math.exp(log_n_total(s, d))
    if not (math.isfinite(ne) and math.isfinite(nt)):
        raise DomainError(f"counts overflow for s={s}, d={d:g}; use the log forms")
    return DegreeCount(s, d, ne, nt, nt / ne)


def total_degree(exponents):
    return int(sum(int(k) for k in exponents))


def euclidean_degree(exponents):
    return math.sqrt(sum(int(k) ** 2 for k in exponents))


def lattice_count(s, d, norm="total"):
    """Number of exponent vectors k in N^s with ``||k|| <= d``.

    Counted by dynamic programming over the coordinates (a histogram of
    partial 1-norms or partial squared 2-norms), which is exact and avoids
    enumerating the ``(d+1)^s`` box.
    """
    s = _check_s(s, MAX_LATTICE_S)
    d = int(d)
    if not 0 <= d <= MAX_LATTICE_D:
        raise DomainError(f"lattice counts need 0 <= d <= {MAX_LATTICE_D}")
    norm = Norm.parse(norm)
    if norm is Norm.MAX:
        return (d + 1) ** s
    if norm is Norm.TOTAL:
        cost, budget = np.arange(d + 1), d
    else:
        cost, budget = np.arange(d + 1) ** 2, d * d
    hist = np.zeros(budget + 1, dtype=object)
    hist[0] = 1
    for _ in range(s):
        new = np.zeros_like(hist)
        for c in cost:
            new[c:] += hist[:budget + 1 - c]
        hist = new
    return int(sum(hist))
