"""Reference targets used by ``--check``.

Each target records where its value comes from (``source``): ``reported``
values are published numbers, ``derived`` ones were recomputed here.
Published tables print one or two significant digits for small entries, so
table targets also carry the printed string; ``printed`` matching accepts
anything that rounds to it (half a unit in the last printed place).
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from typing import Optional

TABLE_REL_TOL = 2e-3


@dataclass(frozen=True)
class Target:
    key: str
    value: float
    source: str
    rel_tol: Optional[float] = None
    abs_tol: Optional[float] = None
    printed: Optional[str] = None
    factor: Optional[float] = None

    def half_unit(self):
        if self.printed is None:
            raise ValueError(f"{self.key} has no printed form")
        exp = Decimal(self.printed).as_tuple().exponent
        return 0.5 * 10.0 ** exp

    def matches(self, measured, mode="default"):
        """``mode``: "default" uses the declared tolerance, "printed" the
        printed precision, "relative" forces ``TABLE_REL_TOL``."""
        measured = float(measured)
        if mode == "printed":
            return abs(measured - self.value) <= self.half_unit() * (1 + 1e-12)
        if mode == "relative":
            return abs(measured - self.value) <= TABLE_REL_TOL * abs(self.value)
        if self.factor is not None:
            return self.value / self.factor <= measured <= self.value * self.factor
        if self.rel_tol is not None:
            return abs(measured - self.value) <= self.rel_tol * abs(self.value)
        return abs(measured - self.value) <= self.abs_tol


def _table(name, rows):
    return {k: Target(f"{name}.k{k}", float(s), "reported",
                      rel_tol=TABLE_REL_TOL, printed=s) for k, s in rows}


# Newton-Cotes, n = 30, |E(T_k)|
TABLE1 = _table("table1", [(30, "399.5"), (32, "2711.1"), (34, "8923.1"),
                           (36, "18765.9"), (38, "27812.9")])
TABLE1_MONOMIAL = {30: Target("table1.monomial.k30", 7e-7, "reported",
                              factor=2.0, printed="0.0000007")}
TABLE1_N = 30

# Clenshaw-Curtis, n = 30, |E(T_k)|
TABLE2 = _table("table2", [(30, "0.0003"), (32, "0.001"), (34, "0.002"),
                           (54, "0.1"), (56, "0.7"), (58, "2.0"), (60, "0.7")])
TABLE2_N = 30

# Newton-Cotes applied to 1/(1 + 25 x^2)
RUNGE = {
    30: Target("runge.n30", -21.8, "reported", abs_tol=0.2),
    50: Target("runge.n50", -24965.0, "reported", rel_tol=0.01),
}

# Number of weights below 2^-52 (Hermite) or above it (Laguerre)
WEIGHT_THRESHOLD = 2.0 ** -52
WEIGHTS_BELOW = {
    ("gauss-hermite", 100): Target("hermite.n100.below", 48, "reported",
                                   abs_tol=0),
    ("gauss-hermite", 1000): Target("hermite.n1000.below", 836, "reported",
                                    abs_tol=0),
}
WEIGHTS_ABOVE = {
    ("gauss-laguerre", 100): Target("laguerre.n100.above", 38, "reported",
                                    abs_tol=0),
}
MIN_WEIGHT_LOG10 = {
    ("gauss-laguerre", 100): Target("laguerre.n100.min_log10", -162,
                                    "reported", abs_tol=2),
}

# N_total / N_euclidean
CUBATURE_RATIO = {
    s: Target(f"cubature.s{s}", v, "reported", rel_tol=0.01)
    for s, v in ((1, 1.0), (2, 1.27), (5, 2.83), (20, 171.0), (40, 41104.0))
}


def gauss_legendre_degree(n):
    return Target(f"exactness.gauss-legendre.n{n}", 2 * n - 1, "derived",
                  abs_tol=0)
