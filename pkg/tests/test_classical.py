import math

import mpmath as mp
import numpy as np
import pytest
from numpy.polynomial import polynomial as P
from scipy.special import roots_hermite, roots_laguerre, roots_legendre

from quadlab import (DomainError, apply_rule, clenshaw_curtis_rule,
                     gauss_log10_weights, gauss_rule, jacobi_recurrence,
                     newton_cotes_rule, trapezoid_rule)
from quadlab.classical import gauss_rule_mp
from quadlab.errors import ConstructionError
from quadlab.exact import monomial_moment

EPS = np.finfo(float).eps


# ---- Gauss rules -----------------------------------------------------------

def test_gl_small():
    r = gauss_rule("legendre", 1)
    assert list(r.nodes) == [0.0] and list(r.weights) == [2.0]
    r = gauss_rule("legendre", 2)
    assert r.nodes == pytest.approx([-1 / math.sqrt(3), 1 / math.sqrt(3)],
                                    rel=0, abs=EPS)
    assert r.weights == pytest.approx([1.0, 1.0], rel=0, abs=EPS)


def test_gh1():
    r = gauss_rule("hermite", 1)
    assert r.nodes[0] == 0.0
    assert r.weights[0] == pytest.approx(math.sqrt(math.pi), rel=EPS)


@pytest.mark.parametrize("n", [5, 30, 100, 300])
def test_against_scipy_legendre(n):
    x, w = roots_legendre(n)
    r = gauss_rule("legendre", n)
    assert np.max(np.abs(r.nodes - x)) < 1e-14
    # scipy's own weights drift to ~1e-10 relative at n = 300
    assert np.max(np.abs(r.weights - w) / w) < 1e-9


@pytest.mark.parametrize("n", [100, 300])
def test_legendre_against_extended_precision(n):
    xs, ws = gauss_rule_mp("legendre", n, bits=120, newton_steps=2)
    r = gauss_rule("legendre", n)
    assert np.max(np.abs(r.nodes - [float(v) for v in xs])) <= EPS
    assert np.max(np.abs(r.weights / [float(v) for v in ws] - 1)) < 1e-12


@pytest.mark.parametrize("n", [5, 30, 100])
def test_against_scipy_hermite(n):
    x, w = roots_hermite(n)
    r = gauss_rule("hermite", n)
    assert np.max(np.abs(r.nodes - x)) < 1e-12 * max(1, np.abs(x).max())
    big = w > 1e-200
    assert np.max(np.abs(r.weights[big] - w[big]) / w[big]) < 1e-10


@pytest.mark.parametrize("n", [5, 30, 80])
def test_against_scipy_laguerre(n):
    x, w = roots_laguerre(n)
    r = gauss_rule("laguerre", n)
    assert np.max(np.abs(r.nodes - x) / x) < 1e-12
    big = w > 1e-200
    assert np.max(np.abs(r.weights[big] - w[big]) / w[big]) < 1e-9


def test_extended_precision_weights_agree():
    # 40-digit weights from the mp path vs the double path
    xs, ws = gauss_rule_mp("hermite", 60, bits=140)
    r = gauss_rule("hermite", 60)
    ref = np.array([float(v) for v in ws])
    assert np.max(np.abs(r.weights - ref) / ref) < 1e-12
    assert np.max(np.abs(r.nodes - [float(v) for v in xs])) < 1e-13


@pytest.mark.parametrize("n", [1, 2, 7, 20, 64, 501, 2000])
def test_gl_invariants(n):
    r = gauss_rule("legendre", n)
    assert abs(r.weights.sum() - 2) <= 8 * EPS * 2
    assert np.all(np.abs(r.nodes) < 1)
    assert np.all(np.abs(r.nodes + r.nodes[::-1]) <= 8 * EPS)
    assert np.all(np.abs(r.weights - r.weights[::-1]) <= 8 * EPS)
    assert np.all(r.weights > 0)


@pytest.mark.parametrize("n", range(1, 21))
def test_gl_monomial_exactness(n):
    r = gauss_rule("legendre", n)
    for k in range(2 * n):
        exact = (1 + (-1) ** k) / (k + 1)
        approx = apply_rule(r, lambda x: x ** k)
        assert abs(approx - exact) <= 50 * EPS * max(abs(exact), 1.0)
    k = 2 * n
    exact = 2 / (k + 1)
    assert abs(apply_rule(r, lambda x: x ** k) - exact) > 1e3 * 50 * EPS * exact


@pytest.mark.parametrize("family,mass", [("hermite", math.sqrt(math.pi)),
                                         ("laguerre", 1.0)])
def test_unbounded_monomials(family, mass):
    n = 12
    r = gauss_rule(family, n)
    for k in range(2 * n):
        exact = float(monomial_moment(k, "gaussian" if family == "hermite"
                                      else "exp-neg-x"))
        approx = apply_rule(r, lambda x: x ** k)
        scale = max(abs(exact), np.abs(r.weights * r.nodes ** k).sum())
        assert abs(approx - exact) <= 1e-12 * scale


def test_jacobi_recurrence_shapes():
    rec = jacobi_recurrence("hermite", 6)
    assert rec.n == 6 and len(rec.beta) == 5 and np.all(rec.beta > 0)
    assert rec.mu0 == pytest.approx(math.sqrt(math.pi))
    assert jacobi_recurrence("laguerre", 4).alpha.tolist() == [1, 3, 5, 7]


def test_gauss_range():
    with pytest.raises(DomainError):
        gauss_rule("legendre", 0)
    with pytest.raises(DomainError):
        gauss_rule("legendre", 5001)
    with pytest.raises(DomainError):
        gauss_rule("jacobi", 5)


def _count_below(family, n):
    lw = gauss_log10_weights(family, n)
    return int(np.sum(lw < math.log10(2.0 ** -52)))


def test_hermite_100_underflow_count():
    assert _count_below("hermite", 100) == 48
    # the stored doubles give the same count
    assert int(np.sum(gauss_rule("hermite", 100).weights < 2.0 ** -52)) == 48


def test_hermite_1000_underflow_count():
    assert _count_below("hermite", 1000) == 836


def test_laguerre_100():
    lw = gauss_log10_weights("laguerre", 100)
    assert 100 - _count_below("laguerre", 100) == 38
    assert abs(lw.min() + 162) <= 2


def test_log_weights_match_mp_for_tiny_laguerre_weights():
    _, ws = gauss_rule_mp("laguerre", 100, bits=120, newton_steps=2)
    with mp.workprec(120):
        ref = np.array([float(mp.log10(v)) for v in ws])
    assert np.max(np.abs(gauss_log10_weights("laguerre", 100) - ref)) < 1e-10


# ---- Newton-Cotes ----------------------------------------------------------

def _lagrange_weights(x):
    """Integrate each Lagrange basis polynomial over [-1, 1]."""
    w = []
    for j in range(len(x)):
        others = np.delete(x, j)
        c = P.polyfromroots(others) / np.prod(x[j] - others)
        ci = P.polyint(c)
        w.append(P.polyval(1.0, ci) - P.polyval(-1.0, ci))
    return np.array(w)


def test_nc2_nc3():
    r = newton_cotes_rule(2)
    assert list(r.nodes) == [-1.0, 1.0] and list(r.weights) == [1.0, 1.0]
    r = newton_cotes_rule(3)
    assert r.weights == pytest.approx([1 / 3, 4 / 3, 1 / 3], rel=EPS)


@pytest.mark.parametrize("n", [4, 7, 11])
def test_nc_against_lagrange(n):
    r = newton_cotes_rule(n)
    assert r.weights == pytest.approx(_lagrange_weights(r.nodes), rel=1e-12)


def test_nc_nodes():
    r = newton_cotes_rule(7)
    assert r.nodes == pytest.approx(-1 + 2 * np.arange(7) / 6, abs=EPS)


def test_nc30_growth_and_alternation():
    w = newton_cotes_rule(30).weights
    assert np.abs(w).max() / 2 > 1e3
    # alternation within each half; the central pair is equal by symmetry
    for half in (w[5:15], w[15:25]):
        assert np.all(np.sign(half[1:]) != np.sign(half[:-1]))


def test_polya_sums():
    s30 = np.abs(newton_cotes_rule(30).weights).sum()
    s50 = np.abs(newton_cotes_rule(50).weights).sum()
    assert s50 / s30 > 2 ** 10
    for r in (clenshaw_curtis_rule(50), gauss_rule("legendre", 50)):
        assert np.abs(r.weights).sum() == pytest.approx(2.0, rel=8 * EPS)


def test_nc_range():
    for n in (1, 61):
        with pytest.raises(DomainError):
            newton_cotes_rule(n)


# ---- Clenshaw-Curtis -------------------------------------------------------

def _cc_weights_by_moments(n):
    """Solve sum_j w_j T_k(x_j) = int T_k for k < n in extended precision."""
    with mp.workprec(200):
        N = n - 1
        x = [mp.cos(mp.pi * j / N) for j in range(n)]
        A = mp.matrix(n, n)
        b = mp.matrix(n, 1)
        for k in range(n):
            for j in range(n):
                A[k, j] = mp.cos(k * mp.acos(x[j]))
            b[k] = 0 if k % 2 else mp.mpf(2) / (1 - k * k)
        w = mp.lu_solve(A, b)
        return np.array([float(v) for v in w])[::-1]


@pytest.mark.parametrize("n", [2, 3, 4, 5, 10, 17, 30])
def test_cc_against_moment_solve(n):
    r = clenshaw_curtis_rule(n)
    assert r.weights == pytest.approx(_cc_weights_by_moments(n), rel=1e-14,
                                      abs=1e-16)


def test_cc2_is_trapezoid():
    r = clenshaw_curtis_rule(2)
    assert list(r.nodes) == [-1.0, 1.0] and list(r.weights) == [1.0, 1.0]


@pytest.mark.parametrize("n", [3, 8, 31, 200])
def test_cc_invariants(n):
    r = clenshaw_curtis_rule(n)
    N = n - 1
    expect = np.sort(np.cos(np.pi * np.arange(n) / N))
    assert r.nodes == pytest.approx(expect, abs=2 * EPS)
    assert np.all(r.weights > 0)
    assert abs(r.weights.sum() - 2) <= 8 * EPS * 2


def test_cc_range():
    with pytest.raises(DomainError):
        clenshaw_curtis_rule(1)


# ---- Trapezoid -------------------------------------------------------------

def test_trapezoid_basic():
    r = trapezoid_rule(-1, 1, 2)
    assert list(r.nodes) == [-1.0, 1.0] and list(r.weights) == [1.0, 1.0]
    p = trapezoid_rule(0, 1, 4, periodic=True)
    assert list(p.nodes) == [0, 0.25, 0.5, 0.75]
    assert list(p.weights) == [0.25] * 4


def test_trapezoid_h2():
    f = lambda x: x * x  # noqa: E731
    for n in (11, 21, 41):
        e1 = apply_rule(trapezoid_rule(-1, 1, n), f) - 2 / 3
        e2 = apply_rule(trapezoid_rule(-1, 1, 2 * n - 1), f) - 2 / 3
        assert e1 / e2 == pytest.approx(4.0, rel=0.1)


def test_trapezoid_invalid():
    with pytest.raises(ConstructionError):
        trapezoid_rule(1, -1, 5)
    with pytest.raises(DomainError):
        trapezoid_rule(-1, 1, 1)
