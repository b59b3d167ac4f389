"""Oracle tests for the special-function layer.

Barnes G is the piece with real failure modes (series truncation, the
recursion shift, complex branch tracking), so it gets three independent
oracles: the Alexeiewsky integral, the Weierstrass product, and closed-form
anchors.  log_gamma delegates to mpmath, so its oracle is a hand-rolled
Stirling series rather than another mpmath call.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpf

from orthank.special import (
    abs2_barnes_g,
    constants,
    laurent_functionals,
    log_barnes_g,
    log_gamma,
    zeta_prime_m1,
)
from orthank.symbols import LaurentPotential


def _stirling_log_gamma(x):
    """Upward shift past 40, then the divergent series truncated at B_18.

    Truncation error at the shift point is below 1e-28, well under the
    comparison tolerance.
    """
    x = mpf(x)
    acc = mpf(0)
    z = x
    while z < 40:
        acc += mp.log(z)
        z += 1
    s = (z - mpf(1) / 2) * mp.log(z) - z + mp.log(2 * mp.pi) / 2
    zp = z
    for k in range(1, 10):
        s += mp.bernoulli(2 * k) / ((2 * k) * (2 * k - 1) * zp)
        zp *= z * z
    return s - acc


def _alexeiewsky_log_barnes(z):
    """log G(1+z) from the integral of log Gamma over [0, z]."""
    z = mpf(z)
    integral = mp.quad(mp.loggamma, [0, 1, z])
    return (
        z * (1 - z) / 2
        + z / 2 * mp.log(2 * mp.pi)
        + z * mp.loggamma(z)
        - integral
    )


def _weierstrass_abs2(y):
    """|G(1+iy)|^2 via the Weierstrass product over the integers."""
    y = mpf(y)

    def term(k):
        return k * mp.log(1 + y * y / (k * k)) - y * y / k

    return mp.exp(y * y * (1 + mp.euler) + mp.nsum(term, [1, mp.inf]))


def test_log_gamma_stirling_oracle(prec256):
    for x in (mpf("0.3"), mpf(1), mpf("2.5"), mpf("7.25"), mpf("15.8")):
        got = log_gamma(x)
        want = _stirling_log_gamma(x)
        assert abs(got - want) < mpf("1e-25") * max(1, abs(want))


def test_log_gamma_rejects_nonpositive(prec256):
    with pytest.raises(ValueError):
        log_gamma(0)
    with pytest.raises(ValueError):
        log_gamma(-3)


def test_barnes_alexeiewsky_integral(prec256):
    got = log_barnes_g(mpf("5.5"))
    with mp.workprec(320):
        want = _alexeiewsky_log_barnes(mpf("4.5"))
    assert abs(got - want) < mpf("1e-20")


def test_barnes_half_integer_anchor(prec256):
    # G(1/2) = 2^(1/24) e^(1/8) pi^(-1/4) A^(-3/2)
    want = (
        mp.log(2) / 24
        + mpf(1) / 8
        - mp.log(mp.pi) / 4
        - mpf(3) / 2 * mp.log(mp.glaisher)
    )
    assert abs(log_barnes_g(mpf("0.5")) - want) < mpf("1e-65")


def test_barnes_small_integer_values(prec256):
    # G(1) = G(2) = G(3) = 1, G(4) = 2, G(5) = 12
    for x in (1, 2, 3):
        assert abs(log_barnes_g(x)) < mpf("1e-70")
    assert abs(log_barnes_g(4) - mp.log(2)) < mpf("1e-70")
    assert abs(log_barnes_g(5) - mp.log(12)) < mpf("1e-70")


def test_barnes_recurrence(prec256):
    # log G(z+1) - log G(z) = log Gamma(z); 19.7 and 24.2 straddle the
    # switch radius so both code paths are exercised
    for z in (mpf("0.7"), mpf("5.5"), mpf("19.7"), mpf("24.2")):
        lhs = log_barnes_g(z + 1) - log_barnes_g(z)
        rhs = log_gamma(z)
        assert abs(lhs - rhs) < mpf("1e-68") * max(1, abs(rhs))


def test_barnes_vs_mpmath_grid(prec256):
    for x in ("0.25", "1.75", "3.5", "5.5", "10.3", "19.9", "20.5", "30"):
        got = log_barnes_g(mpf(x))
        want = mp.log(mp.barnesg(mpf(x)))
        assert abs(got - want) < mpf("1e-60") * max(1, abs(want))


def test_abs2_vs_mpmath_complex(prec256):
    cases = (("0", "0.5"), ("0.25", "1"), ("1", "2"), ("0.3", "10"), ("2", "25"))
    for a, y in cases:
        got = abs2_barnes_g(mpf(a), mpf(y))
        z = mp.mpc(1 + mpf(a), mpf(y))
        want = abs(mp.barnesg(z)) ** 2
        assert abs(got - want) < mpf("1e-55") * want


def test_abs2_weierstrass_oracle(prec256):
    got = abs2_barnes_g(0, mpf("0.5"))
    with mp.workdps(60):
        want = _weierstrass_abs2(mpf("0.5"))
    assert abs(got - want) < mpf("1e-12") * want


@settings(max_examples=40, deadline=None)
@given(
    a=st.floats(min_value=0, max_value=3, allow_nan=False),
    y=st.floats(min_value=0.01, max_value=5, allow_nan=False),
)
def test_abs2_conjugation_symmetry(a, y):
    with mp.workprec(256):
        plus = abs2_barnes_g(mpf(a), mpf(y))
        minus = abs2_barnes_g(mpf(a), -mpf(y))
        assert abs(plus - minus) < mpf("1e-70") * plus


def test_abs2_real_axis_reduces(prec256):
    for a in (mpf(0), mpf("0.25"), mpf("1.5")):
        got = abs2_barnes_g(a, 0)
        want = mp.exp(2 * log_barnes_g(1 + a))
        assert abs(got - want) < mpf("1e-70") * want


def test_abs2_rejects_negative_alpha(prec256):
    with pytest.raises(ValueError):
        abs2_barnes_g(mpf("-0.1"), 1)


def test_zeta_prime_vs_mpmath_derivative(prec256):
    want = mp.zeta(-1, derivative=1)
    assert abs(zeta_prime_m1() - want) < mpf("1e-70")


def test_constants_relation_and_stability():
    with mp.workprec(128):
        low = zeta_prime_m1()
    with mp.workprec(320):
        high = zeta_prime_m1()
        c = constants()
        assert c.zeta_prime_m1 == mpf(1) / 12 - c.log_glaisher
    assert abs(mpf(low) - mpf(high)) < mpf("1e-25")


def test_laurent_functionals(prec256):
    V = LaurentPotential((mpf("0.1"), mpf("0.2"), mpf("-0.05")))
    f = laurent_functionals(V, points=(mpf("0.7"), mpf(2)))
    assert f.v0 == mpf("0.1")
    want_energy = mpf("0.2") ** 2 + 2 * mpf("-0.05") ** 2
    assert abs(f.weighted_energy - want_energy) < mpf("1e-75")
    assert abs(f.v_one - mpf("0.4")) < mpf("1e-75")
    assert abs(f.v_minus_one - mpf("-0.4")) < mpf("1e-75")
    assert f.angles == (mpf("0.7"), mpf(2))
    assert len(f.v_at) == 2 and len(f.sin_sum_at) == 2
    assert abs(f.v_at[1] - V.eval_angle(mpf(2))) == 0
    assert abs(f.sin_sum_at[0] - V.sin_sum(mpf("0.7"))) == 0
