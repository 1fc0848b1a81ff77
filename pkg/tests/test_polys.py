import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadlab import (DomainError, chebyshev_coefficients, chebyshev_T,
                     get_integrand, hermite_psi, monomial_gaussian_max)
from quadlab.polys import (ChebyshevSeries, chebyshev_T_recurrence,
                           hermite_constant)

EPS = np.finfo(float).eps


def test_chebyshev_T_values():
    assert chebyshev_T(7, 1.0) == 1.0
    assert chebyshev_T(2, 0.0) == pytest.approx(-1.0, abs=EPS)
    theta = math.pi / 29
    assert chebyshev_T(30, math.cos(theta)) == pytest.approx(
        math.cos(30 * theta), abs=4 * EPS)


def test_chebyshev_T_domain():
    with pytest.raises(DomainError):
        chebyshev_T(3, 1.0000001)
    with pytest.raises(DomainError):
        chebyshev_T(-1, 0.5)


def test_recurrence_agrees_with_trig_form():
    x = np.linspace(-1, 1, 1000)
    for k in range(61):
        assert np.max(np.abs(chebyshev_T(k, x)
                             - chebyshev_T_recurrence(k, x))) < 1e-10


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 60), st.floats(0, math.pi))
def test_cos_identity(k, theta):
    x = math.cos(theta)
    assert chebyshev_T(k, x) == pytest.approx(math.cos(k * math.acos(x)),
                                              abs=4 * EPS)


def test_coefficients_of_basis_element():
    a = chebyshev_coefficients(get_integrand("cheb-T-5"), 8)
    assert a.coefficient(5) == pytest.approx(1.0, abs=100 * EPS)
    for j in range(9):
        if j != 5:
            assert abs(a.coefficient(j)) <= 100 * EPS


def test_coefficients_of_constant():
    a = chebyshev_coefficients(lambda x: np.ones_like(x), 12, floor=1e-14)
    assert a.degree == 0 and a.coefficient(0) == pytest.approx(1.0)


def test_runge_coefficients():
    a = chebyshev_coefficients(get_integrand("runge"), 200)
    # a_0 = (1/pi) int f / sqrt(1 - x^2) = (1/pi) int_0^pi f(cos t) dt
    with mp.workprec(120):
        a0 = mp.quad(lambda t: 1 / (1 + 25 * mp.cos(t) ** 2),
                     mp.linspace(0, mp.pi, 9)) / mp.pi
    assert a.coefficient(0) == pytest.approx(float(a0), rel=1e-13)
    assert a.coefficient(0) == pytest.approx(1 / math.sqrt(26), rel=1e-13)
    # geometric decay with ratio 1/rho, rho = (1 + sqrt(26)) / 5
    rho = (1 + math.sqrt(26)) / 5
    ratio = abs(a.coefficient(82) / a.coefficient(80))
    assert ratio == pytest.approx(rho ** -2, rel=1e-3)


def test_series_evaluation_and_trimming():
    s = ChebyshevSeries([0.5, 0.0, 0.25, 1e-20, 0.0], floor=1e-18)
    assert s.degree == 2
    x = np.linspace(-1, 1, 7)
    assert s(x) == pytest.approx(0.5 + 0.25 * (2 * x * x - 1))


def test_interpolant_reproduces_function():
    f = get_integrand("exp-neg-inv-x2")
    s = chebyshev_coefficients(f, 300)
    x = np.linspace(-1, 1, 101)
    assert np.max(np.abs(s(x) - f(x))) < 1e-9


# ---- Hermite functions -----------------------------------------------------

def test_psi_values():
    assert hermite_psi(0, 0.0) == pytest.approx(math.pi ** -0.25, rel=1e-15)
    assert hermite_psi(0, 0.0) == pytest.approx(0.7511255, abs=1e-7)
    assert hermite_psi(1, 0.0) == 0.0


def test_psi_against_mp():
    with mp.workprec(200):
        for n, x in ((5, 1.3), (40, 3.7), (200, 12.5), (500, -20.0)):
            h = mp.hermite(n, x) * mp.exp(-mp.mpf(x) ** 2 / 2) / mp.sqrt(
                2 ** n * mp.factorial(n) * mp.sqrt(mp.pi))
            assert hermite_psi(n, x) == pytest.approx(float(h), rel=1e-11)


def test_psi_no_overflow():
    x = np.linspace(-50, 50, 2001)
    v = hermite_psi(500, x)
    assert np.all(np.isfinite(v))
    assert abs(v[0]) < 1e-100


def test_psi_orthonormal():
    x = np.linspace(-40, 40, 4000)
    h = x[1] - x[0]
    psi = np.array([hermite_psi(n, x) for n in range(31)])
    gram = h * psi @ psi.T
    assert np.max(np.abs(gram - np.eye(31))) < 1e-8


def test_alternate_constant_not_unit_norm():
    x = np.linspace(-20, 20, 4001)
    h = x[1] - x[0]
    for n in (0, 3, 10):
        v = hermite_psi(n, x, convention="alternate")
        norm = h * np.sum(v * v)
        expect = (hermite_constant(n, "alternate")
                  / hermite_constant(n)) ** 2
        assert norm == pytest.approx(expect, rel=1e-10)
        if n > 0:
            assert abs(norm - 1) > 0.1


def test_envelope_is_order_one():
    x = np.linspace(0, 25, 25001)
    for n in (0, 1, 10, 50, 100, 200):
        m = np.abs(hermite_psi(n, x)).max()
        assert 0.4 <= m <= 1.0


def test_support_broadens_like_sqrt_n():
    x = np.linspace(0, 30, 30001)
    ns = np.arange(20, 201, 20)
    edge = []
    for n in ns:
        v = np.abs(hermite_psi(n, x))
        edge.append(x[np.nonzero(v >= 0.1)[0][-1]])
    slope = np.polyfit(np.log(ns), np.log(edge), 1)[0]
    assert abs(slope - 0.5) <= 0.05


def test_psi32_decay_threshold():
    # O(1) values inside [0, 8], below 1e-3 once x >= 9.6
    x = np.linspace(0, 8, 801)
    assert np.abs(hermite_psi(32, x)).max() > 0.4
    tail = np.linspace(9.6, 20, 500)
    assert np.abs(hermite_psi(32, tail)).max() < 1e-3
    assert abs(hermite_psi(32, 8.5)) > 1e-3


def test_psi_range():
    with pytest.raises(DomainError):
        hermite_psi(501, 0.0)
    with pytest.raises(DomainError):
        hermite_psi(3, np.inf)


# ---- x^n exp(-x^2) ---------------------------------------------------------

def test_monomial_gaussian_max_examples():
    assert monomial_gaussian_max(2) == pytest.approx((1.0, math.exp(-1)))
    _, v20 = monomial_gaussian_max(20)
    _, v40 = monomial_gaussian_max(40)
    assert 1e6 / 3 <= v20 <= 3e6
    assert 1e17 / 3 <= v40 <= 3e17


@pytest.mark.parametrize("n", [1, 5, 20, 40])
def test_monomial_gaussian_max_by_sampling(n):
    xm, vm = monomial_gaussian_max(n)
    x = np.linspace(0, 3 * xm + 1, 200001)
    v = x ** n * np.exp(-x * x)
    assert v.max() <= vm * (1 + 1e-12)
    assert x[np.argmax(v)] == pytest.approx(xm, abs=1e-3)
