"""Conformally transplanted Gauss rules and truncated-interval quadrature.

The strip map sends the Bernstein ellipse ``E_rho`` onto an infinite strip
and fixes ``+-1``.  It is the composition of

* ``s -> sqrt(k) sn((2K/pi) arcsin s | m)``, the ellipse onto the unit disk,
  with nome ``q = rho^-4`` (``K`` the complete elliptic integral, ``k = m^(1/2)``);
* ``w -> artanh(w)``, the disk onto the strip ``|Im| < pi/4``;

scaled by ``1/artanh(sqrt(k))`` so that ``g(1) = 1``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable

import mpmath as mp
import numpy as np

from .classical import clenshaw_curtis_rule, gauss_rule, trapezoid_rule
from .errors import ConstructionError, DomainError, EvaluationError
from .precision import extended
from .rules import Domain, Family, QuadratureRule, WeightFunction, apply_rule


@dataclass(frozen=True)
class ConformalMap:
    """Odd analytic map ``g`` of [-1, 1] onto itself, with derivative."""

    rho: float
    forward: Callable = None
    derivative: Callable = None
    name: str = ""


def identity_map():
    return ConformalMap(math.inf, lambda s: np.array(s, dtype=float),
                        lambda s: np.ones_like(np.asarray(s, dtype=float)),
                        "identity")


def _map_bits(m1):
    # 1 - m can be ~1e-10 (rho near 1); carry that many extra bits
    return 53 + 40 + max(0, int(-mp.log(m1, 2)))


class _StripMap:
    """Strip map evaluated in extended precision, rounded to double.

    With ``u = (2K/pi) arcsin s`` and ``v = (2K/pi) arccos s = K - u``, the
    functions at u follow from those at v without cancellation near the
    ends: ``sn(u) = cn(v)/dn(v)``, ``cn(u) = k' sn(v)/dn(v)``,
    ``dn(u) = k'/dn(v)``.
    """

    def __init__(self, rho):
        with extended(120):
            q = mp.mpf(rho) ** -4
            t2, t3, t4 = (mp.jtheta(j, 0, q) for j in (2, 3, 4))
            m1 = (t4 / t3) ** 4
        self.bits = _map_bits(m1)
        with extended(self.bits):
            q = mp.mpf(rho) ** -4
            t2, t3, t4 = (mp.jtheta(j, 0, q) for j in (2, 3, 4))
            self.m = (t2 / t3) ** 4
            self.kp = (t4 / t3) ** 2           # k' = sqrt(1 - m)
            self.c = 2 * mp.ellipk(self.m) / mp.pi
            self.r = t2 / t3                   # m^(1/4) = sqrt(k)
            self.scale = mp.atanh(self.r)

    def values(self, s):
        """(g(s), g'(s)) as float arrays."""
        s = np.asarray(s, dtype=float)
        flat = s.ravel()
        g = np.empty_like(flat)
        dg = np.empty_like(flat)
        with extended(self.bits):
            for i, si in enumerate(flat):
                x = mp.mpf(abs(float(si)))
                if x > 1:
                    raise EvaluationError(f"strip map needs |s| <= 1, got {si}")
                phi = mp.acos(x)
                v = self.c * phi
                snv = mp.ellipfun("sn", v, m=self.m)
                cnv = mp.ellipfun("cn", v, m=self.m)
                dnv = mp.ellipfun("dn", v, m=self.m)
                w = self.r * cnv / dnv
                g[i] = mp.sign(si) * mp.atanh(w) / self.scale
                # cn(u) / sqrt(1 - s^2), with its limit k' c at s = 1
                ratio = self.kp * (snv / mp.sin(phi) if phi else self.c) / dnv
                dn_u = self.kp / dnv
                dg[i] = (self.c * self.r * ratio * dn_u
                         / ((1 - w * w) * self.scale))
        return g.reshape(s.shape), dg.reshape(s.shape)


def strip_map(rho=1.4):
    """Map of the Bernstein ellipse with parameter ``rho`` onto a strip."""
    rho = float(rho)
    if math.isinf(rho):
        return identity_map()
    if not 1.0 < rho <= 2.0:
        raise DomainError(f"strip map needs 1 < rho <= 2, got {rho}")
    core = _StripMap(rho)

    def forward(s):
        g = core.values(s)[0]
        return float(g) if g.ndim == 0 else g

    def derivative(s):
        dg = core.values(s)[1]
        return float(dg) if dg.ndim == 0 else dg

    return ConformalMap(rho, forward, derivative, f"strip(rho={rho:g})")


@functools.lru_cache(maxsize=128)
def _strip_arrays(n, rho):
    base = gauss_rule("legendre", n)
    x, dg = _StripMap(rho).values(base.nodes)
    return x, base.weights * dg


def strip_transformed_rule(n, rho=1.4, conformal_map=None):
    """Gauss-Legendre rule transplanted by g: nodes ``g(s_j)``, weights
    ``w_j g'(s_j)``."""
    n = int(n)
    if conformal_map is None and not math.isinf(float(rho)):
        if not 1.0 < float(rho) <= 2.0:
            raise DomainError(f"strip map needs 1 < rho <= 2, got {rho}")
        x, w = _strip_arrays(n, float(rho))
        name = f"strip(rho={float(rho):g})"
    else:
        g = conformal_map or identity_map()
        base = gauss_rule("legendre", n)
        x = np.asarray(g.forward(base.nodes), dtype=float)
        w = base.weights * np.asarray(g.derivative(base.nodes), dtype=float)
        name = g.name
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(w))):
        raise EvaluationError("map evaluation produced non-finite values")
    return QuadratureRule(Family.STRIP_TRANSFORMED_GAUSS, x, w,
                          provenance=f"Gauss-Legendre via {name}")


def central_density_ratio(rule, reference):
    """Ratio of node densities at 0: spacing of the two middle nodes of
    ``reference`` divided by that of ``rule``."""
    def mid_spacing(x):
        i = np.searchsorted(x, 0.0)
        if i < len(x) and x[i] == 0.0:
            return x[i + 1] - x[i - 1]
        return x[i] - x[i - 1]
    return mid_spacing(reference.nodes) / mid_spacing(rule.nodes)


# --------------------------------------------------------------------------
# Truncated-interval quadrature for int exp(-x^2) f(x) dx
# --------------------------------------------------------------------------

INNER_FAMILIES = (Family.GAUSS_LEGENDRE, Family.CLENSHAW_CURTIS,
                  Family.TRAPEZOID)


@dataclass(frozen=True)
class TruncationPlan:
    """Inner rule with n nodes on ``[-L n^(1/3), L n^(1/3)]``."""

    n: int
    L: float = 2.0
    inner_rule_family: Family = Family.GAUSS_LEGENDRE

    def __post_init__(self):
        object.__setattr__(self, "inner_rule_family",
                           Family.parse(self.inner_rule_family))
        if self.inner_rule_family not in INNER_FAMILIES:
            raise ConstructionError(
                f"inner rule must be one of {[f.value for f in INNER_FAMILIES]}")
        if not self.L > 0 or int(self.n) < 2:
            raise ConstructionError("need L > 0 and n >= 2")

    @property
    def half_width(self):
        return self.L * self.n ** (1.0 / 3.0)

    @property
    def interval(self):
        a = self.half_width
        return (-a, a)


def _inner_rule(family, n):
    if family is Family.GAUSS_LEGENDRE:
        return gauss_rule("legendre", n)
    if family is Family.CLENSHAW_CURTIS:
        return clenshaw_curtis_rule(n)
    return trapezoid_rule(-1.0, 1.0, n)


def truncated_hermite_rule(plan):
    """The plan as a rule for ``int exp(-x^2) f(x) dx`` over the real line:
    nodes ``a x_j``, weights ``a w_j exp(-(a x_j)^2)``."""
    a = plan.half_width
    inner = _inner_rule(plan.inner_rule_family, plan.n)
    x = a * inner.nodes
    with np.errstate(under="ignore"):
        w = a * inner.weights * np.exp(-x * x)
    return QuadratureRule(Family.TRUNCATED_HERMITE, x, w, Domain.line(),
                          WeightFunction.GAUSSIAN,
                          provenance=f"{plan.inner_rule_family.value} on "
                                     f"[-{a:.6g}, {a:.6g}], L={plan.L:g}")


def truncated_hermite_integrate(f, n, plan=None):
    """Estimate ``int exp(-x^2) f(x) dx`` by a standard rule on the
    truncated interval ``[-L n^(1/3), L n^(1/3)]``."""
    plan = plan or TruncationPlan(n)
    if plan.n != n:
        raise ConstructionError(f"plan has n={plan.n}, asked for n={n}")
    return apply_rule(truncated_hermite_rule(plan), f)


def gaussian_window_rule(n, half_width=6.0, periodic=True):
    """Trapezoid rule on a fixed window ``[-c, c]`` with the Gaussian folded
    into the weights (the periodic variant suits ``exp(-x^2) f``)."""
    inner = trapezoid_rule(-half_width, half_width, n, periodic=periodic)
    with np.errstate(under="ignore"):
        w = inner.weights * np.exp(-inner.nodes ** 2)
    return QuadratureRule(Family.TRAPEZOID, inner.nodes, w, Domain.line(),
                          WeightFunction.GAUSSIAN,
                          provenance=f"{inner.provenance} trapezoid on "
                                     f"[-{half_width:g}, {half_width:g}]")


def drop_small_weights(rule, threshold=2.0 ** -52):
    """The rule with every node whose weight is below ``threshold`` removed."""
    keep = rule.weights >= threshold
    return QuadratureRule(rule.family, rule.nodes[keep], rule.weights[keep],
                          rule.domain, rule.weight_function,
                          provenance=rule.provenance
                          + f"; weights < {threshold:.3g} dropped")
