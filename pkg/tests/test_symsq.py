from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from artifact.characters import quadratic_character
from artifact.exact_arith import DomainError, SymbolicPeriod
from artifact.gl3_local import hecke_eigenvalues, is_ordinary
from artifact.symsq import (
    algebraicity_check, classical_constant, delta_coefficients, dirichlet_spec, e_infty_ratio_holds,
    euler_coeffs, euler_factor_at_p, imprimitive_coeffs, interpolation_rhs, lift_central_parity,
    lift_hecke_trace, lift_satake, load_delta, numeric_L_value, petersson_from_edge,
    recognize_rational, rhs_ratio_constant, sym2_spec, zeta_spec,
)


@pytest.fixture(scope="module")
def delta():
    return load_delta()


def test_delta_coefficients(delta):
    assert [delta.coefficient(n) for n in range(1, 8)] == [1, -24, 252, -1472, 4830, -6048, -16744]
    assert delta.coefficient(11) == 534612
    assert delta.check_hecke() == (True, None)
    assert delta_coefficients(30)[1:] == [delta.coefficient(n) for n in range(1, 31)]


def test_ramanujan_congruence(delta):
    # tau(n) = sigma_11(n) mod 691
    for n in range(1, 60):
        s11 = sum(d ** 11 for d in range(1, n + 1) if n % d == 0)
        assert (delta.coefficient(n) - s11) % 691 == 0


def test_lift_satake_relations(delta):
    s = lift_satake(delta, 11)
    al, be, ga = s.triple
    assert al * ga == be * be
    assert be == 1
    a1, a2 = hecke_eigenvalues(s)
    assert a1 == lift_hecke_trace(delta, 11) == 498319933
    assert is_ordinary(s, 1)
    # tau(11)^2 - 11^11 is prime to 11, so the lift is ordinary there
    assert (534612 ** 2 - 11 ** 11) % 11 != 0


def test_lift_rejects_non_ordinary(delta):
    # tau(2) = -24 is even
    with pytest.raises(DomainError):
        lift_satake(delta, 2)


def test_lift_parity(delta):
    assert lift_central_parity(delta) == 1


def test_imprimitive_equals_euler_product(delta):
    # level one: no bad primes, so both series agree
    assert imprimitive_coeffs(delta, 50)[1:] == euler_coeffs(delta, 50)[1:]


def test_euler_factor_at_p(delta):
    p, m = 11, 3
    AB = F(p) ** 11
    t = F(delta.coefficient(p))
    e1 = t * t - AB
    x = F(1, p ** m)
    expected = 1 - e1 * x + AB * e1 * x * x - AB ** 3 * x ** 3
    assert euler_factor_at_p(delta, p, m) == expected


def test_zeta_two_calibration():
    v = numeric_L_value(zeta_spec(), 2, dps=30)
    assert abs(v.value - mpmath.pi ** 2 / 6) < 1e-10
    assert v.error < 1e-10


def test_dirichlet_calibration():
    chi = quadratic_character(5)
    v = numeric_L_value(dirichlet_spec(chi), 1, dps=30)
    ref = mpmath.dirichlet(1, [0, 1, -1, -1, 1])
    assert abs(v.value - ref) < 1e-10


def test_interpolation_rejects_non_critical(delta):
    for j in (1, 3, 11, -1):
        with pytest.raises(DomainError):
            interpolation_rhs(delta, 11, j, numeric=False)


def test_interpolation_report_structure(delta):
    rep = interpolation_rhs(delta, 11, 2, numeric=False)
    assert sorted(rep.critical_points) == [0, 2, 4, 6, 8, 10]
    assert rep.omega_parity == 1
    assert rep.e_infty == SymbolicPeriod(2, -9, 9)


def test_e_infty_ratio():
    for a in range(13):
        for j in range(a + 1):
            assert e_infty_ratio_holds(a, j)


def test_rhs_ratio_constant_independent_of_j():
    for a in (2, 5, 10):
        for om in (1, -1):
            consts = {rhs_ratio_constant(a, j, om) for j in range(a + 1)}
            assert len(consts) == 1
            assert classical_constant(a, 0, om) / rhs_ratio_constant(a, 0, om) == SymbolicPeriod(2, -a - 1, a + 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(-10 ** 6, 10 ** 6), st.integers(1, 10 ** 5))
def test_recognize_rational_roundtrip(u, v):
    r = F(u, v)
    with mpmath.workdps(60):
        x = mpmath.mpf(u) / v
        res = recognize_rational(x)
    assert res.ok and res.value == r


def test_recognize_rational_rejects_pi():
    with mpmath.workdps(60):
        assert not recognize_rational(mpmath.pi).ok
        assert not recognize_rational(mpmath.sqrt(2) / 7).ok


def test_recognize_rational_precision_guard():
    res = recognize_rational(mpmath.mpf(1) / 3, precision=mpmath.mpf(10) ** -5)
    assert res.status == "inconclusive"


def test_sym2_spec_rejects_higher_level(delta):
    from artifact.symsq import ModFormData
    g = ModFormData(2, 11, {n: 1 for n in range(1, 10)})
    with pytest.raises(DomainError):
        sym2_spec(g, 5)


@pytest.mark.slow
def test_petersson_norm_of_delta(delta):
    val, err = petersson_from_edge(delta)
    # the classical value of <Delta, Delta>
    with mpmath.workdps(40):
        ref = mpmath.mpf("1.035362056804320922347816812225e-6")
        assert abs(val - ref) < mpmath.mpf(10) ** -34
    assert err < 1e-25


@pytest.mark.slow
@pytest.mark.parametrize("j,expected", [(2, F(1, 14)), (4, F(1, 8))])
def test_delta_algebraicity(delta, j, expected):
    res = algebraicity_check(delta, j)
    assert res.ok
    assert res.complete_value == expected
    assert res.value == expected * euler_factor_at_p(delta, 11, 11 - j)
    assert res.complete_value.denominator < 10 ** 6


@pytest.mark.slow
def test_delta_control_without_e_infty(delta):
    res = algebraicity_check(delta, 2, include_e_infty=False)
    assert not res.ok
