"""Fixed registry of test integrands.

Each entry carries a vectorised double-precision evaluator and a scalar
mpmath evaluator for the reference computations.  Parameterised entries
(``cheb-T-k``, ``monomial-k``) take an integer ``k``; they can be requested
either as ``get_integrand("cheb-T", k=30)`` or as ``get_integrand("cheb-T-30")``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Optional

import mpmath as mp
import numpy as np


@dataclass(frozen=True)
class Integrand:
    id: str
    evaluator: Callable = field(repr=False, compare=False)
    mp_evaluator: Callable = field(repr=False, compare=False)
    analyticity_note: str = ""
    params: tuple = ()
    # Upper bound on the local oscillation rate |d(phase)/dx|; used to size
    # panels in the high-precision reference quadrature.
    phase_rate: Optional[Callable] = field(default=None, repr=False,
                                           compare=False)
    # Points where the integrand is smooth but not analytic.
    breakpoints: tuple = ()

    def __call__(self, x):
        return self.evaluator(np.asarray(x, dtype=float))

    @property
    def name(self):
        if self.params:
            return f"{self.id}-" + "-".join(str(p) for p in self.params)
        return self.id


def _exp_neg_inv_x2(x):
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", over="ignore"):
        out = np.exp(-1.0 / (x * x))
    return np.where(x == 0.0, 0.0, out)


def _mp_exp_neg_inv_x2(x):
    return mp.mpf(0) if x == 0 else mp.exp(-1 / (x * x))


def _cheb(k):
    def evaluator(x):
        x = np.asarray(x, dtype=float)
        return np.cos(k * np.arccos(np.clip(x, -1.0, 1.0)))

    def mp_evaluator(x):
        return mp.cos(k * mp.acos(x))

    return Integrand("cheb-T", evaluator, mp_evaluator,
                     f"Chebyshev polynomial T_{k}", params=(k,))


def _monomial(k):
    return Integrand("monomial", lambda x: np.asarray(x, dtype=float) ** k,
                     lambda x: x ** k, f"monomial x^{k}", params=(k,))


_FIXED = {
    "one": Integrand("one", lambda x: np.ones_like(np.asarray(x, float)),
                     lambda x: mp.mpf(1), "constant"),
    "runge": Integrand(
        "runge", lambda x: 1.0 / (1.0 + 25.0 * np.asarray(x, float) ** 2),
        lambda x: 1 / (1 + 25 * x * x),
        "analytic; poles at +-i/5"),
    "exp-neg-inv-x2": Integrand(
        "exp-neg-inv-x2", _exp_neg_inv_x2, _mp_exp_neg_inv_x2,
        "C-infinity but not analytic at 0", breakpoints=(0.0,)),
    "cos-x": Integrand(
        "cos-x", lambda x: np.cos(x), mp.cos, "entire, bounded on R",
        phase_rate=lambda x: 1),
    "cos-x2": Integrand(
        "cos-x2", lambda x: np.cos(np.asarray(x, float) ** 2),
        lambda x: mp.cos(x * x), "entire, bounded on R",
        phase_rate=lambda x: 2 * abs(x)),
    "cos-x3": Integrand(
        "cos-x3", lambda x: np.cos(np.asarray(x, float) ** 3),
        lambda x: mp.cos(x ** 3), "entire, bounded on R, all wave numbers",
        phase_rate=lambda x: 3 * x * x),
    "inv-1px2": Integrand(
        "inv-1px2", lambda x: 1.0 / (1.0 + np.asarray(x, float) ** 2),
        lambda x: 1 / (1 + x * x), "analytic in |Im x| < 1"),
}

_PARAMETRIC = {"cheb-T": _cheb, "monomial": _monomial}

_NAME_RE = re.compile(r"^(cheb-T|monomial)-(\d+)$")


def integrand_names():
    return sorted(_FIXED) + [f"{p}-k" for p in sorted(_PARAMETRIC)]


def get_integrand(name, k=None):
    """Look up a registered integrand by name (and parameter ``k``)."""
    if isinstance(name, Integrand):
        return name
    m = _NAME_RE.match(name)
    if m:
        name, k = m.group(1), int(m.group(2))
    if name in _FIXED:
        return _FIXED[name]
    if name in _PARAMETRIC:
        if k is None or int(k) < 0:
            raise KeyError(f"integrand {name!r} needs a nonnegative k")
        return _PARAMETRIC[name](int(k))
    raise KeyError(f"unknown integrand {name!r}; known: "
                   + ", ".join(integrand_names()))
