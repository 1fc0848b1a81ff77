"""Node and weight construction for the classical rule families.

Gauss rules follow Golub and Welsch: the nodes are eigenvalues of the
symmetric tridiagonal Jacobi matrix of the orthonormal recurrence.  The
weight ``mu0 * v_0^2`` needs the first component of each normalised
eigenvector; that vector is proportional to ``(p_0(x), ..., p_{n-1}(x))``,
so we obtain ``mu0 * v_0^2 = 1 / sum_k p_k(x)^2`` from the recurrence
directly, with running rescaling so that weights of size 1e-300 and below
come out with full relative accuracy (or underflow cleanly to 0.0).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import mpmath as mp
import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

from .errors import ConstructionError, DomainError
from .exact import exact_newton_cotes
from .precision import extended, working_bits
from .rules import Domain, Family, QuadratureRule, WeightFunction

GAUSS_FAMILIES = {
    "legendre": Family.GAUSS_LEGENDRE,
    "hermite": Family.GAUSS_HERMITE,
    "laguerre": Family.GAUSS_LAGUERRE,
}

MAX_GAUSS_N = 5000
_RESCALE = 1e100
# Below this size the nodes and weights are polished in extended precision
# and then rounded, so that they are correctly rounded doubles.
SMALL_N = 24
_POLISH_BITS = 120


@dataclass(frozen=True)
class JacobiRecurrence:
    """Orthonormal three-term recurrence
    ``beta_{k+1} p_{k+1} = (x - alpha_k) p_k - beta_k p_{k-1}``.

    ``alpha`` has length n and ``beta`` holds ``beta_1..beta_{n-1}`` (the
    off-diagonal of the Jacobi matrix).
    """

    family: str
    alpha: np.ndarray
    beta: np.ndarray
    mu0: float

    def __post_init__(self):
        if len(self.beta) != len(self.alpha) - 1:
            raise ConstructionError("beta must have length n - 1")
        if np.any(self.beta <= 0):
            raise ConstructionError("off-diagonal coefficients must be > 0")

    @property
    def n(self):
        return len(self.alpha)


def _family_key(family):
    if isinstance(family, Family):
        for key, fam in GAUSS_FAMILIES.items():
            if fam is family:
                return key
    key = str(family).lower().replace("gauss-", "")
    if key not in GAUSS_FAMILIES:
        raise DomainError(f"no Gauss family {family!r}")
    return key


def _coefficients(key, n):
    """alpha_0..alpha_{n}, beta_0..beta_{n} (beta_0 = 0) and mu0."""
    k = np.arange(n + 1, dtype=float)
    if key == "legendre":
        return np.zeros(n + 1), k / np.sqrt(np.maximum(4 * k * k - 1, 1)), 2.0
    if key == "hermite":
        return np.zeros(n + 1), np.sqrt(k / 2), math.sqrt(math.pi)
    return 2 * k + 1, k.copy(), 1.0


def jacobi_recurrence(family, n):
    key = _family_key(family)
    alpha, beta, mu0 = _coefficients(key, n)
    return JacobiRecurrence(key, alpha[:n], beta[1:n], mu0)


def _recurrence_sweep(x, alpha, beta, mu0, n):
    """Newton correction ``p_n/p_n'`` and ``log(1/sum_{k<n} p_k^2)`` at x."""
    p_prev = np.zeros_like(x)
    p = np.full_like(x, 1.0 / math.sqrt(mu0))
    d_prev = np.zeros_like(x)
    d = np.zeros_like(x)
    total = p * p
    log_scale = np.zeros_like(x)
    for k in range(n):
        b_next = beta[k + 1] if k < n - 1 else 1.0  # p_n need not be normalised
        p_new = ((x - alpha[k]) * p - beta[k] * p_prev) / b_next
        d_new = (p + (x - alpha[k]) * d - beta[k] * d_prev) / b_next
        p_prev, p, d_prev, d = p, p_new, d, d_new
        if k < n - 1:
            total = total + p * p
        big = np.abs(p) > _RESCALE
        if np.any(big):
            c = np.where(big, np.abs(p), 1.0)
            p_prev, p, d_prev, d = p_prev / c, p / c, d_prev / c, d / c
            total = total / (c * c)
            log_scale = log_scale + np.log(c)
    return p / d, -(np.log(total) + 2 * log_scale)


@functools.lru_cache(maxsize=64)
def _gauss_arrays(key, n):
    alpha, beta, mu0 = _coefficients(key, n)
    try:
        x = eigh_tridiagonal(alpha[:n], beta[1:n], eigvals_only=True,
                             lapack_driver="stemr")
    except LinAlgError as exc:
        raise ConstructionError(
            f"tridiagonal eigensolver failed for {key} n={n}: {exc}") from exc
    if n > 1:
        step, _ = _recurrence_sweep(x, alpha, beta, mu0, n)
        x = x - step
    _, log_w = _recurrence_sweep(x, alpha, beta, mu0, n)
    with np.errstate(under="ignore"):
        w = np.exp(log_w)
    if n <= SMALL_N:
        xs, ws = gauss_rule_mp(key, n, bits=_POLISH_BITS, newton_steps=2,
                               start=x)
        x = np.array([float(v) for v in xs])
        w = np.array([float(v) for v in ws])
        with extended(_POLISH_BITS):
            log_w = np.array([float(mp.log(v)) for v in ws])
    elif key in ("legendre", "hermite"):
        x = 0.5 * (x - x[::-1])
        w = 0.5 * (w + w[::-1])
    x.setflags(write=False)
    w.setflags(write=False)
    log_w.setflags(write=False)
    return x, w, log_w


def _domain_for(key):
    if key == "legendre":
        return Domain.interval(-1.0, 1.0), WeightFunction.UNIT
    if key == "hermite":
        return Domain.line(), WeightFunction.GAUSSIAN
    return Domain.half_line(), WeightFunction.EXP_NEG_X


def gauss_rule(family, n):
    """n-point Gauss-Legendre, Gauss-Hermite or Gauss-Laguerre rule."""
    n = int(n)
    if not 1 <= n <= MAX_GAUSS_N:
        raise DomainError(f"Gauss rules support 1 <= n <= {MAX_GAUSS_N}")
    key = _family_key(family)
    x, w, _ = _gauss_arrays(key, n)
    domain, weight = _domain_for(key)
    return QuadratureRule(GAUSS_FAMILIES[key], x, w, domain, weight,
                          provenance="Golub-Welsch eigenvalues + "
                                     "Newton step, Christoffel weights")


def gauss_log10_weights(family, n):
    """``log10`` of the Gauss weights, valid where the doubles underflow."""
    _, _, log_w = _gauss_arrays(_family_key(family), int(n))
    return log_w / math.log(10.0)


def gauss_rule_mp(family, n, bits=None, newton_steps=3, start=None):
    """Gauss nodes and weights as mpmath numbers.

    Starts from the double-precision eigenvalues and polishes each node by
    Newton's method in extended precision; weights are ``1/sum p_k^2``.
    Returns ``(nodes, weights)`` as lists.
    """
    key = _family_key(family)
    n = int(n)
    x0 = _gauss_arrays(key, n)[0] if start is None else start
    with extended(bits):
        one = mp.mpf(1)
        if key == "legendre":
            alpha = [mp.mpf(0)] * (n + 1)
            beta = [mp.mpf(0)] + [k / mp.sqrt(4 * k * k - one)
                                    for k in range(1, n + 1)]
            mu0 = mp.mpf(2)
        elif key == "hermite":
            alpha = [mp.mpf(0)] * (n + 1)
            beta = [mp.sqrt(k * one / 2) for k in range(n + 1)]
            mu0 = mp.sqrt(mp.pi)
        else:
            alpha = [mp.mpf(2 * k + 1) for k in range(n + 1)]
            beta = [mp.mpf(k) for k in range(n + 1)]
            mu0 = one
        p0 = 1 / mp.sqrt(mu0)
        nodes, weights = [], []
        for xf in x0:
            x = mp.mpf(float(xf))
            for step in range(newton_steps + 1):
                pm, p, dm, d = mp.mpf(0), p0, mp.mpf(0), mp.mpf(0)
                total = p * p
                for k in range(n):
                    b = beta[k + 1] if k < n - 1 else one
                    pn = ((x - alpha[k]) * p - beta[k] * pm) / b
                    dn = (p + (x - alpha[k]) * d - beta[k] * dm) / b
                    pm, p, dm, d = p, pn, d, dn
                    if k < n - 1:
                        total += p * p
                if step < newton_steps:
                    x -= p / d
            nodes.append(x)
            weights.append(1 / total)
    return nodes, weights


# --------------------------------------------------------------------------
# Interpolatory rules on [-1, 1]
# --------------------------------------------------------------------------

def newton_cotes_rule(n):
    """Closed Newton-Cotes rule: the exact rational weights, rounded."""
    n = int(n)
    if not 2 <= n <= 60:
        raise DomainError(f"Newton-Cotes supports 2 <= n <= 60, got {n}")
    nodes, weights = exact_newton_cotes(n).to_floats()
    return QuadratureRule(Family.NEWTON_COTES, nodes, weights,
                          provenance="rounded exact rational weights")


def clenshaw_curtis_mp(n, bits=None):
    """Clenshaw-Curtis angles ``j*pi/(n-1)`` and weights in extended precision.

    Explicit cosine sums, ordered by decreasing node, i.e. ``x_j = cos(theta_j)``.
    """
    n = int(n)
    if n < 2:
        raise DomainError("Clenshaw-Curtis needs n >= 2")
    return _clenshaw_curtis_mp(n, working_bits() if bits is None else int(bits))


@functools.lru_cache(maxsize=512)
def _clenshaw_curtis_mp(n, bits):
    N = n - 1
    with extended(bits):
        thetas = [mp.pi * j / N for j in range(n)]
        end = 1 / mp.mpf(N * N - 1 if N % 2 == 0 else N * N)
        weights = [end]
        for j in range(1, N):
            v = mp.mpf(1)
            for k in range(1, (N - 1) // 2 + 1 if N % 2 else N // 2):
                v -= 2 * mp.cos(2 * k * thetas[j]) / (4 * k * k - 1)
            if N % 2 == 0:
                v -= mp.cos(N * thetas[j]) / (N * N - 1)
            weights.append(2 * v / N)
        weights.append(end)
        return tuple(thetas), tuple(weights)


def clenshaw_curtis_rule(n):
    """Clenshaw-Curtis rule on the n Chebyshev points ``cos(j*pi/(n-1))``."""
    thetas, weights = clenshaw_curtis_mp(n)
    with extended():
        x = [float(mp.cos(t)) for t in reversed(thetas)]
    w = [float(v) for v in reversed(weights)]
    # Exact symmetry; cos(pi/2) does not round to 0.
    x = np.array(x)
    x = 0.5 * (x - x[::-1])
    return QuadratureRule(Family.CLENSHAW_CURTIS, x, w,
                          provenance="cosine-sum weights in extended "
                                     "precision, rounded")


def trapezoid_rule(a, b, n, periodic=False):
    """Composite trapezoid rule on ``[a, b]`` with n nodes.

    Non-periodic: endpoints included, end weights ``h/2``.  Periodic: the left
    endpoint is included, the right one is not, and every weight is
    ``(b - a)/n``.
    """
    a, b, n = float(a), float(b), int(n)
    if not a < b:
        raise ConstructionError(f"invalid interval [{a}, {b}]")
    if periodic:
        if n < 1:
            raise DomainError("periodic trapezoid needs n >= 1")
        h = (b - a) / n
        x = a + h * np.arange(n)
        w = np.full(n, h)
    else:
        if n < 2:
            raise DomainError("trapezoid needs n >= 2")
        h = (b - a) / (n - 1)
        x = a + h * np.arange(n)
        x[-1] = b
        w = np.full(n, h)
        w[0] = w[-1] = h / 2
    return QuadratureRule(Family.TRAPEZOID, x, w, Domain.interval(a, b),
                          provenance="periodic" if periodic else "composite")
