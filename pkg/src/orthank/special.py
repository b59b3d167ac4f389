"""Special functions and constants for the asymptotic formulas.

Barnes G is the only piece needing real work: the asymptotic expansion of
log G at large argument plus downward recursion G(z+1) = Gamma(z) G(z)
covers the strip the formulas use (real part in (0, 30], |imag| <= 50).
Everything else delegates to mpmath primitives.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpf

def _switch_radius():
    """Shift target for the Barnes recursion, scaled to working precision.

    The divergent tail of the expansion bottoms out near exp(-2 pi |w|), so
    |w| must grow linearly with the precision for the series to reach it.
    0.12 > log(2)/(2 pi) keeps the floor below 2^-prec with margin.
    """
    return int(mpf("0.12") * mp.prec) + 8


def log_gamma(x):
    """log Gamma(x) for real x > 0."""
    x = mpf(x)
    if x <= 0:
        raise ValueError("log_gamma requires x > 0")
    return mp.loggamma(x)


def _log_barnes_series(w):
    """Asymptotic expansion of log G(1+w), for |w| at or past the switch radius.

    log G(1+w) = w^2/2 (log w - 3/2) + w/2 log 2pi - 1/12 log w + zeta'(-1)
                 + sum_k B_{2k+2} / (4 k (k+1) w^{2k})

    The tail is summed to optimal truncation: stop once a term stops
    shrinking or drops below the working epsilon.
    """
    lw = mp.log(w)
    total = w * w / 2 * (lw - mpf(3) / 2) + w / 2 * mp.log(2 * mp.pi) - lw / 12
    total += zeta_prime_m1()
    w2 = w * w
    wp = w2
    eps = mpf(2) ** (-mp.prec - 8)
    prev = mp.inf
    for k in range(1, 4 * _switch_radius()):
        term = mp.bernoulli(2 * k + 2) / (4 * k * (k + 1) * wp)
        mag = abs(term)
        if mag >= prev:
            break
        total += term
        if mag < eps * max(1, abs(total)):
            break
        prev = mag
        wp *= w2
    return total


def _log_barnes_raw(z):
    """log G(z) on the working strip via shift-then-expand.

    Works for real mpf (staying real) and complex mpc alike; the recursion
    path z, z+1, ... keeps Re > 0, where loggamma is principal and
    continuous, so the branch is tracked correctly.
    """
    re = mp.re(z)
    if re <= 0:
        raise ValueError("log_barnes_g requires real part > 0")
    shift = int(max(0, mp.ceil(_switch_radius() + 1 - re)))
    acc = mpf(0)
    for j in range(shift):
        acc += mp.loggamma(z + j)
    return _log_barnes_series(z + shift - 1) - acc


def log_barnes_g(x):
    """log G(x) for real x > 0."""
    x = mpf(x)
    if x <= 0:
        raise ValueError("log_barnes_g requires x > 0")
    return _log_barnes_raw(x)


def abs2_barnes_g(alpha, y):
    """|G(1 + alpha + iy)|^2 for alpha >= 0, real y."""
    alpha = mpf(alpha)
    y = mpf(y)
    if alpha < 0:
        raise ValueError("abs2_barnes_g requires alpha >= 0")
    if y == 0:
        return mp.exp(2 * _log_barnes_raw(1 + alpha))
    z = mp.mpc(1 + alpha, y)
    return mp.exp(2 * mp.re(_log_barnes_raw(z)))


_const_cache = {}


def zeta_prime_m1():
    """zeta'(-1) = 1/12 - log A (A = Glaisher's constant)."""
    key = mp.prec
    val = _const_cache.get(key)
    if val is None:
        val = mpf(1) / 12 - mp.log(mp.glaisher)
        _const_cache[key] = val
    return val


@dataclass(frozen=True)
class SpecialConstants:
    zeta_prime_m1: object
    log_glaisher: object


def constants():
    """The stored constants, satisfying zeta_prime_m1 = 1/12 - log_glaisher."""
    return SpecialConstants(
        zeta_prime_m1=zeta_prime_m1(), log_glaisher=mp.log(mp.glaisher)
    )


@dataclass(frozen=True)
class LaurentFunctionals:
    """The potential functionals entering the asymptotic constants."""

    v0: object
    weighted_energy: object  # sum_{k>=1} k V_k^2
    v_one: object            # V(1)
    v_minus_one: object      # V(-1)
    angles: tuple
    v_at: tuple              # V(e^{it}) per angle
    sin_sum_at: tuple        # sum_{k>=1} V_k sin(kt) per angle


def laurent_functionals(V, points=()):
    """Evaluate V_0, sum k V_k^2, V(+-1), and per-angle V, sin-sum."""
    angles = tuple(mpf(t) for t in points)
    return LaurentFunctionals(
        v0=V.coeffs[0] if V.coeffs else mpf(0),
        weighted_energy=V.weighted_energy(),
        v_one=V.value_at_one(),
        v_minus_one=V.value_at_minus_one(),
        angles=angles,
        v_at=tuple(V.eval_angle(t) for t in angles),
        sin_sum_at=tuple(V.sin_sum(t) for t in angles),
    )
