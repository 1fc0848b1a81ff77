"""Quadrature rules and the act of applying them.

A :class:`QuadratureRule` is an immutable set of nodes and weights tied to a
domain and a weight function.  :func:`apply_rule` forms ``sum_j w_j f(x_j)``
with an exactly rounded sum, which matters for rules such as Newton-Cotes
whose weights are huge and alternate in sign.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConstructionError, EvaluationError


class Family(str, enum.Enum):
    NEWTON_COTES = "newton-cotes"
    CLENSHAW_CURTIS = "clenshaw-curtis"
    GAUSS_LEGENDRE = "gauss-legendre"
    GAUSS_HERMITE = "gauss-hermite"
    GAUSS_LAGUERRE = "gauss-laguerre"
    TRAPEZOID = "trapezoid"
    STRIP_TRANSFORMED_GAUSS = "strip-transformed-gauss"
    TRUNCATED_HERMITE = "truncated-hermite"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        for member in cls:
            if member.value == key:
                return member
        raise ValueError(f"unknown rule family {value!r}")


class WeightFunction(str, enum.Enum):
    UNIT = "unit"
    GAUSSIAN = "exp-neg-x2"
    EXP_NEG_X = "exp-neg-x"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        aliases = {"gaussian": cls.GAUSSIAN, "hermite": cls.GAUSSIAN,
                   "laguerre": cls.EXP_NEG_X, "exponential": cls.EXP_NEG_X}
        if key in aliases:
            return aliases[key]
        for member in cls:
            if member.value == key:
                return member
        raise ValueError(f"unknown weight function {value!r}")


# Families whose weights are positive in exact arithmetic.  Stored weights may
# still be 0.0 where the true value underflows the double range.
POSITIVE_FAMILIES = frozenset({
    Family.CLENSHAW_CURTIS,
    Family.GAUSS_LEGENDRE,
    Family.GAUSS_HERMITE,
    Family.GAUSS_LAGUERRE,
    Family.TRAPEZOID,
    Family.STRIP_TRANSFORMED_GAUSS,
    Family.TRUNCATED_HERMITE,
})


@dataclass(frozen=True)
class Domain:
    """Closed integration domain ``[a, b]``; endpoints may be infinite."""

    a: float
    b: float

    def __post_init__(self):
        if not self.a < self.b:
            raise ConstructionError(f"invalid interval [{self.a}, {self.b}]")

    @classmethod
    def interval(cls, a=-1.0, b=1.0):
        return cls(float(a), float(b))

    @classmethod
    def line(cls):
        return cls(-math.inf, math.inf)

    @classmethod
    def half_line(cls):
        return cls(0.0, math.inf)

    @property
    def kind(self):
        if math.isinf(self.a) and math.isinf(self.b):
            return "line"
        if math.isinf(self.b):
            return "half-line"
        return "interval"

    @property
    def length(self):
        return self.b - self.a

    def contains(self, x):
        x = np.asarray(x)
        return (x >= self.a) & (x <= self.b)

    def __str__(self):
        return f"[{self.a:g}, {self.b:g}]"


def default_domain(weight):
    weight = WeightFunction.parse(weight)
    if weight is WeightFunction.GAUSSIAN:
        return Domain.line()
    if weight is WeightFunction.EXP_NEG_X:
        return Domain.half_line()
    return Domain.interval(-1.0, 1.0)


def weight_mass(weight, domain=None):
    """Integral of the weight function over its domain."""
    weight = WeightFunction.parse(weight)
    if weight is WeightFunction.GAUSSIAN:
        return math.sqrt(math.pi)
    if weight is WeightFunction.EXP_NEG_X:
        return 1.0
    domain = domain or default_domain(weight)
    return domain.length


def _frozen(values):
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes ``x_j`` and weights ``w_j`` of an ``n``-point formula.

    ``nodes`` are strictly increasing and lie in the closure of ``domain``.
    ``provenance`` is free text recording how the rule was built.
    """

    family: Family
    nodes: np.ndarray
    weights: np.ndarray
    domain: Domain = field(default_factory=Domain.interval)
    weight_function: WeightFunction = WeightFunction.UNIT
    provenance: str = ""

    def __post_init__(self):
        object.__setattr__(self, "family", Family.parse(self.family))
        object.__setattr__(self, "weight_function",
                           WeightFunction.parse(self.weight_function))
        nodes = _frozen(self.nodes)
        weights = _frozen(self.weights)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

        if nodes.ndim != 1 or nodes.size == 0:
            raise ConstructionError("a rule needs a non-empty 1-D node array")
        if weights.shape != nodes.shape:
            raise ConstructionError(
                f"{nodes.size} nodes but {weights.size} weights")
        if not (np.all(np.isfinite(nodes)) and np.all(np.isfinite(weights))):
            raise ConstructionError("nodes and weights must be finite")
        if nodes.size > 1 and not np.all(np.diff(nodes) > 0):
            raise ConstructionError("nodes must be strictly increasing")
        if not np.all(self.domain.contains(nodes)):
            raise ConstructionError(f"nodes leave the domain {self.domain}")
        if self.family in POSITIVE_FAMILIES and np.any(weights < 0):
            raise ConstructionError(
                f"{self.family.value} rule has a negative weight")

    @property
    def n(self):
        return int(self.nodes.size)

    def __len__(self):
        return self.n

    def __iter__(self):
        return iter(zip(self.nodes.tolist(), self.weights.tolist()))

    def __repr__(self):
        return (f"QuadratureRule({self.family.value}, n={self.n}, "
                f"domain={self.domain}, weight={self.weight_function.value})")


def _evaluate(f, x):
    fn = getattr(f, "evaluator", f)
    with np.errstate(all="ignore"):
        values = np.asarray(fn(x), dtype=float)
    if values.shape != x.shape:
        values = np.broadcast_to(values, x.shape)
    return values


def compensated_sum(terms):
    """Exactly rounded sum, accumulated in ascending order of magnitude."""
    terms = np.asarray(terms, dtype=float).ravel()
    order = np.argsort(np.abs(terms), kind="stable")
    return math.fsum(terms[order].tolist())


def apply_rule(rule, f):
    """Return ``I_n(f) = sum_j w_j f(x_j)``.

    ``f`` is an :class:`~quadlab.integrands.Integrand` or any vectorised
    callable.  Raises :class:`EvaluationError` naming the first node where
    ``f`` is not finite.
    """
    values = _evaluate(f, rule.nodes)
    bad = ~np.isfinite(values)
    if np.any(bad):
        j = int(np.argmax(bad))
        name = getattr(f, "id", getattr(f, "__name__", "integrand"))
        raise EvaluationError(
            f"{name} is not finite at node {j} (x = {float(rule.nodes[j])!r})")
    return compensated_sum(rule.weights * values)


def quadrature_error(rule, f, reference):
    """Signed error ``I_n(f) - I(f)`` against a trusted reference value."""
    value = getattr(reference, "value", reference)
    return apply_rule(rule, f) - float(value)
