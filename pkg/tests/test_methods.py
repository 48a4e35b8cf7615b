import numpy as np
import pytest
from hypothesis import given, strategies as st

from imexdde import (
    UnsupportedOrderError,
    convergence_rate,
    imex_bdf_coefficients,
    method_from_tag,
)


def test_order2_coefficients_exact(bdf2):
    assert bdf2.s == bdf2.p == 2
    np.testing.assert_array_equal(bdf2.alpha, [0.5, -2.0, 1.5])
    np.testing.assert_array_equal(bdf2.beta, [0.0, 0.0, 1.0])
    np.testing.assert_allclose(bdf2.sigma, [-1.0, 2.0], atol=1e-14)
    # delayed combination: 2 g_{n-m} - g_{n-1-m}
    np.testing.assert_allclose(bdf2.beta_star, [-1.0, 2.0], atol=1e-14)


def test_order3_coefficients_exact(bdf3):
    assert bdf3.s == bdf3.p == 3
    np.testing.assert_allclose(bdf3.alpha, [-1.0 / 3.0, 1.5, -3.0, 11.0 / 6.0],
                               atol=1e-15)
    np.testing.assert_array_equal(bdf3.beta, [0.0, 0.0, 0.0, 1.0])
    # delayed combination: 3 g_{n-m} - 3 g_{n-1-m} + g_{n-2-m}
    np.testing.assert_allclose(bdf3.beta_star, [1.0, -3.0, 3.0], atol=1e-13)


@pytest.mark.parametrize("order", [2, 3])
def test_extrapolation_moment_conditions(order):
    m = imex_bdf_coefficients(order)
    j = np.arange(m.s)
    for q in range(m.p):
        moments = np.where(j == 0, 1.0, j ** q) if q == 0 else j ** q
        assert np.sum(moments * m.sigma) == pytest.approx(float(m.s) ** q, abs=1e-12)


@pytest.mark.parametrize("order", [2, 3])
def test_beta_star_relation_and_consistency(order):
    m = imex_bdf_coefficients(order)
    np.testing.assert_allclose(m.beta_star, m.beta[:-1] + m.beta[-1] * m.sigma,
                               atol=1e-14)
    assert np.sum(m.alpha) == pytest.approx(0.0, abs=1e-13)
    assert np.sum(np.arange(m.s + 1) * m.alpha) == pytest.approx(np.sum(m.beta),
                                                                 abs=1e-13)


@pytest.mark.parametrize("order", [0, 1, 4, 7])
def test_unsupported_order_rejected(order):
    with pytest.raises(UnsupportedOrderError):
        imex_bdf_coefficients(order)


def test_method_from_tag():
    assert method_from_tag("bdf2").label == "bdf2"
    assert method_from_tag("BDF3").label == "bdf3"
    with pytest.raises(UnsupportedOrderError):
        method_from_tag("rk4")


def test_convergence_rate_exact_second_order():
    e = 3.7e-4
    assert convergence_rate(4 * e, e, 0.02, 0.01) == pytest.approx(2.0, abs=1e-14)


def test_convergence_rate_equal_errors_is_zero():
    assert convergence_rate(1e-3, 1e-3, 0.05, 0.005) == 0.0


@pytest.mark.parametrize("bad", [(0.0, 1e-3), (1e-3, 0.0), (-1e-3, 1e-3)])
def test_convergence_rate_rejects_nonpositive_errors(bad):
    with pytest.raises(ValueError):
        convergence_rate(bad[0], bad[1], 0.05, 0.005)


def test_convergence_rate_requires_decreasing_h():
    with pytest.raises(ValueError):
        convergence_rate(1e-3, 1e-4, 0.005, 0.05)


@given(p=st.floats(0.5, 5.0), c=st.floats(1e-6, 1e3),
       h1=st.floats(0.02, 0.5), ratio=st.floats(1.5, 20.0))
def test_convergence_rate_recovers_power(p, c, h1, ratio):
    h2 = h1 / ratio
    assert convergence_rate(c * h1 ** p, c * h2 ** p, h1, h2) == pytest.approx(p, rel=1e-9)
