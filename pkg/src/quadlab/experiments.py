"""Error tables, convergence studies and the Chebyshev error decomposition."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import mpmath as mp
import numpy as np
from scipy import stats

from .classical import (clenshaw_curtis_mp, clenshaw_curtis_rule, gauss_rule,
                        gauss_rule_mp, newton_cotes_rule, trapezoid_rule)
from .errors import DomainError
from .exact import (chebyshev_moment, exact_newton_cotes, exact_rule_error,
                    reference_integral)
from .integrands import get_integrand
from .polys import chebyshev_coefficients
from .precision import extended
from .rules import Family, WeightFunction, apply_rule
from .transforms import (TruncationPlan, gaussian_window_rule,
                         strip_transformed_rule, truncated_hermite_rule)

TABLE_FAMILIES = (Family.NEWTON_COTES, Family.CLENSHAW_CURTIS,
                  Family.GAUSS_LEGENDRE)
MAX_TABLE_SIZE = 80
DEFAULT_FIT_FLOOR = 1e-13


class Model(str, enum.Enum):
    """Convergence models, each a straight line in ``log(error)`` against
    a transformed abscissa."""

    EXP_N = "exp-n"              # exp(-C n)
    EXP_N23 = "exp-n23"          # exp(-C n^(2/3))
    EXP_SQRT_N = "exp-sqrt-n"    # exp(-C sqrt(n))
    POWER_LAW = "power-law"      # n^(-p)

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).lower().replace("_", "-")
        aliases = {"expn": cls.EXP_N, "expn23": cls.EXP_N23,
                   "expsqrtn": cls.EXP_SQRT_N, "powerlaw": cls.POWER_LAW}
        try:
            return aliases.get(key.replace("-", ""), None) or cls(key)
        except ValueError:
            raise DomainError(f"unknown model {value!r}") from None

    def abscissa(self, n):
        n = np.asarray(n, dtype=float)
        if self is Model.EXP_N:
            return n
        if self is Model.EXP_N23:
            return n ** (2.0 / 3.0)
        if self is Model.EXP_SQRT_N:
            return np.sqrt(n)
        return np.log(n)


@dataclass(frozen=True)
class Fit:
    model: Model
    slope: float
    intercept: float
    r_squared: float
    n_points: int

    def __post_init__(self):
        if not 0.0 <= self.r_squared <= 1.0:
            raise ValueError("r_squared outside [0, 1]")

    @property
    def rate(self):
        """The constant C (or power p): minus the fitted slope."""
        return -self.slope


@dataclass(frozen=True)
class Sample:
    n: int
    abs_error: float
    below_floor: bool = False


@dataclass(frozen=True)
class ConvergenceRecord:
    family: Family
    integrand_id: str
    samples: tuple
    fit: Optional[Fit] = None
    weight: WeightFunction = WeightFunction.UNIT
    settings: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        ns = [s.n for s in self.samples]
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise ValueError("sample n must be strictly increasing")
        if any(not s.abs_error >= 0 for s in self.samples):
            raise ValueError("abs_error must be >= 0")

    @property
    def ns(self):
        return np.array([s.n for s in self.samples])

    @property
    def errors(self):
        return np.array([s.abs_error for s in self.samples])


@dataclass(frozen=True)
class ErrorTable:
    """``|E_n(T_k)|`` (and optionally ``|E_n(x^k)|``) for even k."""

    family: Family
    n: int
    rows: tuple
    monomial_rows: Optional[tuple] = None

    def __post_init__(self):
        ks = [k for k, _ in self.rows]
        if any(k % 2 for k in ks) or any(b <= a for a, b in zip(ks, ks[1:])):
            raise ValueError("table rows need even k in ascending order")

    def error(self, k, basis="chebyshev"):
        rows = self.rows if basis == "chebyshev" else self.monomial_rows
        for kk, e in rows or ():
            if kk == k:
                return e
        raise KeyError(k)


# --------------------------------------------------------------------------
# Tables
# --------------------------------------------------------------------------

def _mp_ratio(q):
    return mp.mpf(q.numerator) / q.denominator


def _table_errors_float_rule(nodes, weights, ks, basis):
    """``|sum w T_k(x) - int T_k|`` in the current mp precision."""
    out = []
    for k in ks:
        if basis == "chebyshev":
            approx = mp.fsum(w * mp.cos(k * mp.acos(x))
                             for x, w in zip(nodes, weights))
            exact = _mp_ratio(chebyshev_moment(k))
        else:
            approx = mp.fsum(w * x ** k for x, w in zip(nodes, weights))
            exact = mp.mpf(1 + (-1) ** k) / (k + 1)
        out.append(float(abs(approx - exact)))
    return out


def build_error_table(family, n, k_max, k_min=0, monomial=False):
    """Errors of the n-point rule on ``T_k`` for even ``k_min <= k <= k_max``.

    Newton-Cotes errors come from the exact rational weights; Clenshaw-Curtis
    and Gauss-Legendre errors are computed in extended precision from
    extended-precision nodes and weights.  Everything is rounded to double
    only at the end.  ``monomial=True`` adds ``|E_n(x^k)|`` as a second column.
    """
    family = Family.parse(family)
    if family not in TABLE_FAMILIES:
        raise DomainError(f"tables support {[f.value for f in TABLE_FAMILIES]}")
    n, k_max = int(n), int(k_max)
    if not (2 <= n <= MAX_TABLE_SIZE and 0 <= k_max <= MAX_TABLE_SIZE):
        raise DomainError(f"need 2 <= n <= {MAX_TABLE_SIZE} and "
                          f"k_max <= {MAX_TABLE_SIZE}")
    ks = [k for k in range(int(k_min), k_max + 1) if k % 2 == 0]
    bases = ["chebyshev"] + (["monomial"] if monomial else [])
    cols = {}
    if family is Family.NEWTON_COTES:
        rule = exact_newton_cotes(n)
        for b in bases:
            cols[b] = [abs(float(exact_rule_error(rule, k, b))) for k in ks]
    else:
        with extended():
            if family is Family.CLENSHAW_CURTIS:
                thetas, weights = clenshaw_curtis_mp(n)
                nodes = [mp.cos(t) for t in thetas]
            else:
                nodes, weights = gauss_rule_mp("legendre", n)
            for b in bases:
                cols[b] = _table_errors_float_rule(nodes, weights, ks, b)
    rows = tuple(zip(ks, cols["chebyshev"]))
    mono = tuple(zip(ks, cols["monomial"])) if monomial else None
    return ErrorTable(family, n, rows, mono)


# --------------------------------------------------------------------------
# Convergence studies
# --------------------------------------------------------------------------

_FAMILY_WEIGHT = {
    Family.GAUSS_HERMITE: WeightFunction.GAUSSIAN,
    Family.GAUSS_LAGUERRE: WeightFunction.EXP_NEG_X,
    Family.TRUNCATED_HERMITE: WeightFunction.GAUSSIAN,
}

_DEFAULT_MODEL = {
    Family.GAUSS_HERMITE: Model.EXP_SQRT_N,
    Family.GAUSS_LAGUERRE: Model.EXP_SQRT_N,
    Family.TRUNCATED_HERMITE: Model.EXP_N23,
    Family.NEWTON_COTES: Model.EXP_N,
}


def default_n_list(family, weight=None):
    """Default sample sizes: 2..120 on [-1, 1], 10..1000 on the line."""
    family = Family.parse(family)
    weight = WeightFunction.parse(weight or _FAMILY_WEIGHT.get(
        family, WeightFunction.UNIT))
    if weight is WeightFunction.UNIT:
        return list(range(2, 121))
    return list(range(10, 1001, 10))


def build_rule(family, n, *, weight=None, rho=1.4, L=2.0,
               inner=Family.GAUSS_LEGENDRE, half_width=6.0, periodic=True):
    """Construct the rule a convergence study uses at size n."""
    family = Family.parse(family)
    weight = WeightFunction.parse(weight or _FAMILY_WEIGHT.get(
        family, WeightFunction.UNIT))
    if family is Family.NEWTON_COTES:
        return newton_cotes_rule(n)
    if family is Family.CLENSHAW_CURTIS:
        return clenshaw_curtis_rule(n)
    if family is Family.GAUSS_LEGENDRE:
        return gauss_rule("legendre", n)
    if family is Family.GAUSS_HERMITE:
        return gauss_rule("hermite", n)
    if family is Family.GAUSS_LAGUERRE:
        return gauss_rule("laguerre", n)
    if family is Family.STRIP_TRANSFORMED_GAUSS:
        return strip_transformed_rule(n, rho)
    if family is Family.TRUNCATED_HERMITE:
        return truncated_hermite_rule(TruncationPlan(n, L, inner))
    if weight is WeightFunction.GAUSSIAN:
        return gaussian_window_rule(n, half_width, periodic)
    if weight is WeightFunction.UNIT:
        return trapezoid_rule(-1.0, 1.0, n)
    raise DomainError(f"no trapezoid variant for {weight.value} weight")


def fit_model(ns, errors, model, floor=DEFAULT_FIT_FLOOR):
    """Least-squares line through ``log(error)`` against ``model.abscissa(n)``,
    using only errors at or above ``floor``.  Returns None with fewer than
    three usable points."""
    model = Model.parse(model)
    ns, errors = np.asarray(ns, float), np.asarray(errors, float)
    keep = errors >= floor
    if keep.sum() < 3:
        return None
    res = stats.linregress(model.abscissa(ns[keep]), np.log(errors[keep]))
    return Fit(model, float(res.slope), float(res.intercept),
               float(min(1.0, res.rvalue ** 2)), int(keep.sum()))


def convergence_study(family, integrand_id, n_list=None, *, weight=None,
                      rho=1.4, L=2.0, inner=Family.GAUSS_LEGENDRE,
                      half_width=6.0, periodic=True, model=None,
                      fit_floor=DEFAULT_FIT_FLOOR):
    """Absolute errors of a rule family on one integrand over ``n_list``.

    Exactly zero errors are kept as below-floor samples (with error 0.0) and
    left out of the fit, as are errors under ``fit_floor``.
    """
    family = Family.parse(family)
    weight = WeightFunction.parse(weight or _FAMILY_WEIGHT.get(
        family, WeightFunction.UNIT))
    f = get_integrand(integrand_id)
    ref = reference_integral(f, weight)
    n_list = sorted(set(int(n) for n in (n_list or default_n_list(family,
                                                                  weight))))
    samples = []
    for n in n_list:
        rule = build_rule(family, n, weight=weight, rho=rho, L=L, inner=inner,
                          half_width=half_width, periodic=periodic)
        approx = apply_rule(rule, f)
        with extended():
            err = float(abs(mp.mpf(approx) - ref.value))
        samples.append(Sample(n, err, err == 0.0))
    model = Model.parse(model or _DEFAULT_MODEL.get(family, Model.EXP_N))
    usable = [s for s in samples if not s.below_floor]
    fit = fit_model([s.n for s in usable], [s.abs_error for s in usable],
                    model, fit_floor)
    settings = {"rho": rho, "L": L, "inner": Family.parse(inner).value,
                "half_width": half_width, "periodic": periodic}
    return ConvergenceRecord(family, f.name, tuple(samples), fit, weight,
                             settings)


def n_to_reach(record, tol):
    """Smallest sampled n from which every later sample has error <= tol."""
    hit = None
    for s in record.samples:
        if s.abs_error <= tol:
            hit = s.n if hit is None else hit
        else:
            hit = None
    return hit


# --------------------------------------------------------------------------
# Chebyshev error decomposition
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    n: int
    m: int
    terms: tuple              # (j, a_j, E_n(T_j), a_j E_n(T_j))
    partial_sum: float
    measured: float
    tail: float

    @property
    def tolerance(self):
        return max(1e-12, 10.0 * abs(self.tail))

    @property
    def consistent(self):
        return abs(self.partial_sum - self.measured) <= self.tolerance


def clenshaw_curtis_T_errors(n, js):
    """Signed ``E_n(T_j)`` of the n-point Clenshaw-Curtis rule."""
    with extended():
        thetas, weights = clenshaw_curtis_mp(n)
        out = []
        for j in js:
            approx = mp.fsum(w * mp.cos(j * t) for t, w in zip(thetas, weights))
            out.append(float(approx - _mp_ratio(chebyshev_moment(j))))
    return out


def error_decomposition(n, f, m=None):
    """Split the Clenshaw-Curtis error on f into ``sum_j a_j E_n(T_j)``.

    Coefficients come from the degree-2m Chebyshev interpolant.  Terms are
    listed for even ``n <= j <= m``; the tail estimate is the same sum over
    even ``m < j <= 2m``.
    """
    n = int(n)
    m = 2 * n if m is None else int(m)
    if m < 2 * n:
        raise DomainError(f"need m >= 2n = {2 * n}, got m = {m}")
    f = get_integrand(f) if isinstance(f, str) else f
    series = chebyshev_coefficients(f, 2 * m)
    js = [j for j in range(n, 2 * m + 1) if j % 2 == 0]
    errs = clenshaw_curtis_T_errors(n, js)
    products = [series.coefficient(j) * e for j, e in zip(js, errs)]
    terms = tuple((j, series.coefficient(j), e, p)
                  for j, e, p in zip(js, errs, products) if j <= m)
    partial = math.fsum(t[3] for t in terms)
    tail = math.fsum(p for j, p in zip(js, products) if j > m)
    ref = reference_integral(f)
    with extended():
        measured = float(mp.mpf(apply_rule(clenshaw_curtis_rule(n), f))
                         - ref.value)
    return Decomposition(n, m, terms, partial, measured, tail)
