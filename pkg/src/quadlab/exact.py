"""Exact and high-precision reference machinery.

* Newton-Cotes weights as exact rationals, from the moment equations.
* Exact Chebyshev and monomial moments.
* Exactness-degree certification of floating-point rules, evaluated in
  extended precision so that only the stored nodes and weights matter.
* Reference integrals: closed forms where known, otherwise composite
  Gauss-Legendre panels in extended precision with a two-mesh check.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .errors import ConstructionError, DomainError, PrecisionError
from .integrands import Integrand, get_integrand
from .precision import extended
from .rules import Domain, QuadratureRule, WeightFunction, default_domain


# --------------------------------------------------------------------------
# Newton-Cotes in exact arithmetic
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalRule:
    """Rule with exact rational nodes and weights on [-1, 1]."""

    n: int
    nodes: tuple
    weights: tuple

    def __post_init__(self):
        if len(self.nodes) != self.n or len(self.weights) != self.n:
            raise ConstructionError("node/weight count does not match n")
        if sum(self.weights) != 2:
            raise ConstructionError("rational weights do not sum to 2")
        if any(w != v for w, v in zip(self.weights, reversed(self.weights))):
            raise ConstructionError("rational weights are not symmetric")

    def to_floats(self):
        return [float(x) for x in self.nodes], [float(w) for w in self.weights]


def equispaced_nodes(n):
    """``x_j = -1 + 2j/(n-1)`` as exact fractions."""
    return tuple(Fraction(2 * j - (n - 1), n - 1) for j in range(n))


def _solve_exact(matrix, rhs):
    """Gaussian elimination with partial pivoting over the rationals."""
    n = len(rhs)
    a = [[Fraction(v) for v in row] + [Fraction(b)]
         for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(a[r][col]))
        if a[piv][col] == 0:
            raise ConstructionError("singular moment system")
        a[col], a[piv] = a[piv], a[col]
        prow = a[col]
        for r in range(col + 1, n):
            factor = a[r][col] / prow[col]
            if factor:
                row = a[r]
                for c in range(col, n + 1):
                    row[c] -= factor * prow[c]
    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        s = a[r][n] - sum(a[r][c] * x[c] for c in range(r + 1, n))
        x[r] = s / a[r][r]
    return x


def monomial_moment_unit(k):
    """``int_{-1}^{1} x^k dx`` as an exact fraction."""
    return Fraction(1 + (-1) ** k, k + 1)


def moment_residuals(rule):
    """Exact residuals ``sum_j w_j x_j^k - int x^k`` for ``k < n``."""
    return [sum(w * x ** k for x, w in zip(rule.nodes, rule.weights))
            - monomial_moment_unit(k) for k in range(rule.n)]


@functools.lru_cache(maxsize=None)
def exact_newton_cotes(n):
    """Exact rational Newton-Cotes rule with ``n`` equispaced nodes.

    Solves ``sum_j w_j x_j^k = (1 + (-1)^k)/(k + 1)`` for ``k = 0..n-1``.
    """
    n = int(n)
    if not 2 <= n <= 60:
        raise DomainError(f"Newton-Cotes supports 2 <= n <= 60, got {n}")
    nodes = equispaced_nodes(n)
    matrix = [[x ** k for x in nodes] for k in range(n)]
    rhs = [monomial_moment_unit(k) for k in range(n)]
    weights = _solve_exact(matrix, rhs)
    rule = RationalRule(n, nodes, tuple(weights))
    if any(moment_residuals(rule)):
        raise ConstructionError("nonzero moment residual in exact solve")
    return rule


def chebyshev_T_exact(k, x):
    """``T_k(x)`` for rational ``x`` by the integer three-term recurrence."""
    x = Fraction(x)
    if k == 0:
        return Fraction(1)
    prev, cur = Fraction(1), x
    for _ in range(k - 1):
        prev, cur = cur, 2 * x * cur - prev
    return cur


def chebyshev_moment(k):
    """``int_{-1}^{1} T_k(x) dx``: ``2/(1-k^2)`` for even k, else 0."""
    k = int(k)
    if k < 0:
        raise DomainError("k must be nonnegative")
    if k % 2:
        return Fraction(0)
    return Fraction(2, 1 - k * k)


def exact_rule_error(rule, k, basis="chebyshev"):
    """Exact error of a :class:`RationalRule` on ``T_k`` or ``x^k``."""
    if basis == "chebyshev":
        approx = sum(w * chebyshev_T_exact(k, x)
                     for x, w in zip(rule.nodes, rule.weights))
        return approx - chebyshev_moment(k)
    if basis == "monomial":
        approx = sum(w * x ** k for x, w in zip(rule.nodes, rule.weights))
        return approx - monomial_moment_unit(k)
    raise ValueError(f"unknown basis {basis!r}")


def monomial_moment(k, weight=WeightFunction.UNIT):
    """Moment ``int w(x) x^k dx`` over the weight's natural domain.

    Exact ``Fraction`` for the unit and ``exp(-x)`` weights; an mpmath
    number (``Gamma((k+1)/2)`` or 0) for the Gaussian weight.
    """
    weight = WeightFunction.parse(weight)
    if weight is WeightFunction.UNIT:
        return monomial_moment_unit(k)
    if weight is WeightFunction.EXP_NEG_X:
        return Fraction(math.factorial(k))
    if k % 2:
        return mp.mpf(0)
    return mp.gamma(mp.mpf(k + 1) / 2)


# --------------------------------------------------------------------------
# Exactness degree
# --------------------------------------------------------------------------

def _exact_degree_rational(rule, k_max):
    for k in range(k_max + 1):
        if exact_rule_error(rule, k) != 0:
            return k - 1
    return k_max


def _basis_values(kind, xs):
    """Yield the basis evaluated at ``xs`` for k = 0, 1, 2, ..."""
    if kind == "chebyshev":
        prev = [mp.mpf(1)] * len(xs)
        yield prev
        cur = list(xs)
        while True:
            yield cur
            prev, cur = cur, [2 * x * c - p for x, c, p in zip(xs, cur, prev)]
    else:
        cur = [mp.mpf(1)] * len(xs)
        while True:
            yield cur
            cur = [c * x for c, x in zip(cur, xs)]


def exactness_degree(rule, tol=1e-10, k_max=None):
    """Largest ``d`` such that basis polynomials of degree ``<= d`` are
    integrated to relative accuracy ``tol``.

    On ``[-1, 1]`` with unit weight the basis is ``T_k``; for the Gaussian and
    ``exp(-x)`` weights it is ``x^k`` with exact moments.  The relative error
    is ``|E| / max(|I|, sum_j |w_j p_k(x_j)|)``, so odd basis functions with
    zero integral are measured against the size of the sum itself.  The scan
    stops at the first failure.  A :class:`RationalRule` is certified in exact
    arithmetic (``tol`` is ignored).
    """
    if isinstance(rule, RationalRule):
        return _exact_degree_rational(rule, 2 * rule.n if k_max is None
                                      else k_max)
    if not isinstance(rule, QuadratureRule):
        raise TypeError("expected a QuadratureRule or RationalRule")

    weight = rule.weight_function
    if weight is WeightFunction.UNIT:
        if (rule.domain.a, rule.domain.b) != (-1.0, 1.0):
            raise DomainError("unit-weight certification needs [-1, 1]")
        kind = "chebyshev"
    elif weight is WeightFunction.GAUSSIAN and rule.domain.kind == "line":
        kind = "monomial"
    elif weight is WeightFunction.EXP_NEG_X and rule.domain.kind == "half-line":
        kind = "monomial"
    else:
        raise DomainError(f"unsupported pairing: {weight.value} weight on "
                          f"{rule.domain}")
    if k_max is None:
        k_max = 2 * rule.n + 1

    with extended():
        xs = [mp.mpf(float(x)) for x in rule.nodes]
        ws = [mp.mpf(float(w)) for w in rule.weights]
        basis = _basis_values(kind, xs)
        for k in range(k_max + 1):
            values = next(basis)
            terms = [w * v for w, v in zip(ws, values)]
            approx = mp.fsum(terms)
            if kind == "chebyshev":
                exact = mp.mpf(chebyshev_moment(k).numerator) / \
                    chebyshev_moment(k).denominator
            else:
                moment = monomial_moment(k, weight)
                exact = (mp.mpf(moment.numerator) / moment.denominator
                         if isinstance(moment, Fraction) else moment)
            scale = max(abs(exact), mp.fsum(abs(t) for t in terms))
            if scale == 0:
                continue
            if abs(approx - exact) / scale > tol:
                return k - 1
    return k_max


# --------------------------------------------------------------------------
# Reference integrals
# --------------------------------------------------------------------------

class Method(str, enum.Enum):
    CLOSED_FORM = "closed-form"
    QUADRATURE = "high-precision-quadrature"


@dataclass(frozen=True)
class ReferenceValue:
    integrand_id: str
    domain: Domain
    weight: WeightFunction
    value: mp.mpf
    method: Method
    digits: int

    def __float__(self):
        return float(self.value)


def _cos_x2_laguerre():
    # int_0^inf exp(i x^2 - x) dx, completing the square about x = -i/2
    z = mp.expj(mp.mpf(1) / 4) * mp.sqrt(mp.pi) / 2 * mp.expj(mp.pi / 4) \
        * mp.erfc(mp.expj(mp.pi / 4) / 2)
    return mp.re(z)


def _closed_form(integrand, weight):
    key, params = integrand.id, integrand.params
    U, G, E = WeightFunction.UNIT, WeightFunction.GAUSSIAN, \
        WeightFunction.EXP_NEG_X
    if key == "one":
        return {U: mp.mpf(2), G: mp.sqrt(mp.pi), E: mp.mpf(1)}[weight]
    if key == "cheb-T" and weight is U:
        m = chebyshev_moment(params[0])
        return mp.mpf(m.numerator) / m.denominator
    if key == "monomial":
        m = monomial_moment(params[0], weight)
        return (mp.mpf(m.numerator) / m.denominator
                if isinstance(m, Fraction) else m)
    table = {
        ("runge", U): lambda: mp.mpf(2) / 5 * mp.atan(5),
        ("exp-neg-inv-x2", U):
            lambda: 2 * (mp.exp(-1) - mp.sqrt(mp.pi) * mp.erfc(1)),
        ("cos-x", U): lambda: 2 * mp.sin(1),
        ("cos-x", G): lambda: mp.sqrt(mp.pi) * mp.exp(mp.mpf(-1) / 4),
        ("cos-x", E): lambda: mp.mpf(1) / 2,
        ("cos-x2", G): lambda: mp.re(mp.sqrt(mp.pi / mp.mpc(1, -1))),
        ("cos-x2", E): _cos_x2_laguerre,
        ("inv-1px2", U): lambda: mp.pi / 2,
        ("inv-1px2", G): lambda: mp.pi * mp.e * mp.erfc(1),
    }
    fn = table.get((key, weight))
    return None if fn is None else fn()


_MESHES = ((mp.mpf("0.25"), 3), (mp.mpf("0.2"), 2))


def _panels(a, b, integrand, mesh):
    hmax, cycles = _MESHES[mesh]
    rate = integrand.phase_rate or (lambda x: 0)
    stops = sorted({a, b} | {mp.mpf(p) for p in integrand.breakpoints
                             if a < p < b})
    pts = [stops[0]]
    for stop in stops[1:]:
        x = pts[-1]
        while x < stop:
            x = min(stop, x + min(hmax, cycles / (1 + rate(abs(x)))))
            pts.append(x)
    return pts


def _truncation(weight, digits):
    # Tail of the weight beyond X is below 10^-(digits + 8) for |f| <= 1.
    t = (digits + 8) * mp.log(10)
    if weight is WeightFunction.GAUSSIAN:
        return mp.sqrt(t)
    return t


def _quadrature(integrand, weight, domain, digits, mesh):
    if weight is WeightFunction.UNIT:
        a, b = mp.mpf(domain.a), mp.mpf(domain.b)
        g = integrand.mp_evaluator
    elif weight is WeightFunction.GAUSSIAN:
        X = _truncation(weight, digits)
        a, b = -X, X
        f = integrand.mp_evaluator
        g = lambda x: mp.exp(-x * x) * f(x)  # noqa: E731
    else:
        a, b = mp.mpf(0), _truncation(weight, digits)
        f = integrand.mp_evaluator
        g = lambda x: mp.exp(-x) * f(x)  # noqa: E731
    pts = _panels(a, b, integrand, mesh)
    return mp.quad(g, pts, method="gauss-legendre")


@functools.lru_cache(maxsize=256)
def _reference(integrand, weight, domain, method, digits):
    with extended() as bits:
        if bits < 3.33 * digits + 20:
            raise PrecisionError(
                f"{bits} bits cannot carry {digits} significant digits")
        if method is not Method.QUADRATURE \
                and domain == default_domain(weight):
            value = _closed_form(integrand, weight)
            if value is not None:
                return ReferenceValue(integrand.name, domain, weight,
                                      +value, Method.CLOSED_FORM, digits)
            if method is Method.CLOSED_FORM:
                raise KeyError(f"no closed form for {integrand.name} with "
                               f"{weight.value} weight")
        if domain.kind != default_domain(weight).kind:
            raise DomainError(f"{weight.value} weight on {domain}")
        v1 = _quadrature(integrand, weight, domain, digits, 0)
        v2 = _quadrature(integrand, weight, domain, digits, 1)
        agree = digits - 10
        if abs(v1 - v2) > mp.mpf(10) ** (-agree) * max(1, abs(v1)):
            raise PrecisionError(
                f"two-mesh quadrature of {integrand.name} disagrees beyond "
                f"1e-{agree}", (v1, v2))
        return ReferenceValue(integrand.name, domain, weight, v1,
                              Method.QUADRATURE, digits)


def reference_integral(integrand, weight=WeightFunction.UNIT, domain=None,
                       *, method=None, digits=50):
    """High-precision value of ``int_D w(x) f(x) dx``.

    ``domain`` defaults to the weight's natural domain (``[-1, 1]``, the real
    line, the half-line).  ``method`` may force ``Method.QUADRATURE`` (used
    to cross-check closed forms) or require ``Method.CLOSED_FORM``.
    """
    integrand = get_integrand(integrand) if not isinstance(
        integrand, Integrand) else integrand
    weight = WeightFunction.parse(weight)
    domain = domain or default_domain(weight)
    method = None if method is None else Method(method)
    return _reference(integrand, weight, domain, method, int(digits))
