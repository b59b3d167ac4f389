"""Closed-form large-n predictions for the exact ensemble averages.

Everything here is a formula evaluation: smooth-symbol limits, the
singular-symbol constants, arc-support constants built from the exterior
conformal data (delta functionals, reparametrized potential), reflection
values of the orthogonal polynomials at the two real points, and the
thinned-gap limit formulas for all four labels and their circular
beta combinations.  No determinants are computed here; the exact
finite-n counterparts live in `ensembles` and `opuc`.

All predictions are returned in log form (an `AsymPrediction`), because
the interesting quantities carry factors like (sin t0/2)^(4n^2) that
underflow any fixed-exponent format long before the asymptotic regime
is reached.
"""

from dataclasses import dataclass

from mpmath import mp, mpf

from .moments import gauss_legendre_rule
from .special import abs2_barnes_g, log_barnes_g, log_gamma, zeta_prime_m1
from .symbols import EnsembleLabel, FHSymbol, GapSymbol, LaurentPotential

# Residual-imaginary guards.  Phase factors whose exponents carry an
# explicit i must cancel to a real number when every beta is purely
# imaginary; these bounds catch a broken branch convention, they are not
# accuracy targets.
PHASE_TOL = mpf("1e-20")
QUAD_IM_TOL = mpf("1e-12")

E_CONST_VARIANTS = ("as_printed", "alpha_end")

_I = mp.mpc(0, 1)


class BranchConventionError(ArithmeticError):
    """A combination of complex factors failed to come out real."""


class AssemblyError(ArithmeticError):
    """Two independent assemblies of the same prediction disagree."""


@dataclass(frozen=True)
class AsymPrediction:
    """A predicted value in log form.

    ``envelope=True`` means the prediction is only claimed up to a
    bounded multiplicative factor; comparisons must then test
    boundedness of the ratio, never convergence to 1.  ``sign`` carries
    the sign of the predicted quantity itself (the log is of its
    absolute value).
    """

    log_value: object
    error_order: str
    envelope: bool = False
    sign: int = 1

    def value(self):
        return self.sign * mp.exp(self.log_value)


@dataclass(frozen=True)
class DeltaValues:
    """Logs of the two exterior-map functionals of a gap potential.

    Both underlying values are positive reals; log_delta_inf is the
    value at infinity, log_delta_minus_at_m1 the boundary value taken
    from outside the supporting arc at the point -1.
    """

    log_delta_inf: object
    log_delta_minus_at_m1: object


def _combine_phases(parts):
    """Sum complex phase exponents that must cancel to a real number."""
    if not parts:
        return mpf(0)
    total = mp.fsum(parts)
    re, im = mp.re(total), mp.im(total)
    if abs(im) > PHASE_TOL * max(mpf(1), abs(re)):
        raise BranchConventionError(
            "imaginary residue %s in a phase combination that must be real" % mp.nstr(im, 8)
        )
    return re


def _v0(V: LaurentPotential):
    return V.coeffs[0] if V.coeffs else mpf(0)


def szego_limit(V: LaurentPotential, N):
    """Smooth-symbol limit of the N-th Toeplitz log-determinant."""
    log_value = N * _v0(V) + V.weighted_energy()
    return AsymPrediction(log_value=log_value, error_order="1+o(1)")


def fh_E_const(sym: FHSymbol, variant="as_printed"):
    """Log of the constant E in the singular-symbol Toeplitz asymptotics.

    Assembled term by term.  Phase factors are accumulated in complex
    arithmetic with beta_j = i*b_j and must cancel to a real number;
    the residual-imaginary assertion guards the branch conventions.

    The lone 2^(-alpha0*alpha_m) factor is ambiguous in its source (the
    neighbouring factors pair alpha_0 with the first endpoint and
    alpha_{m+1} with the second); ``variant`` selects the literal
    reading ("as_printed") or the alpha_{m+1} reading ("alpha_end").
    The convergence tests decide empirically; nothing here prefers one.
    """
    if variant not in E_CONST_VARIANTS:
        raise ValueError("unknown e_const variant %r" % (variant,))
    V = sym.potential
    v0 = _v0(V)
    a0, ae = sym.alpha0, sym.alpha_end
    sgs = sym.singularities
    m = sym.m
    ts = [s.t for s in sgs]
    alphas = [s.alpha for s in sgs]
    bs = [s.beta_im for s in sgs]
    betas = [mp.mpc(0, b) for b in bs]

    phases = []
    if m:
        sum_alpha = mp.fsum(alphas)
        sum_tbeta = mp.fsum(t * be for t, be in zip(ts, betas))
        sum_beta = mp.fsum(betas)
        phases.append(2 * _I * sum_alpha * sum_tbeta)
        phases.append(-2 * mp.pi * _I * mp.fsum(
            alphas[j] * betas[k] for j in range(m) for k in range(j + 1, m)
        ))
        phases.append(-mp.pi * _I * mp.fsum(a * be for a, be in zip(alphas, betas)))
        for t, be in zip(ts, betas):
            phases.append(2 * _I * be * V.sin_sum(t))
        phases.append(_I * (a0 + ae) * sum_tbeta)
        phases.append(-mp.pi * _I * a0 * sum_beta)

    total = V.weighted_energy() / 2
    for t, a, b in zip(ts, alphas, bs):
        total += mp.log(abs2_barnes_g(a, b)) - log_barnes_g(1 + 2 * a)
        total -= a * (V.eval_angle(t) - v0)
        total += (b * b - a * a) * mp.log(2 * mp.sin(t))
    for j in range(m):
        for k in range(j + 1, m):
            ajk = alphas[j] * alphas[k]
            bjk = bs[j] * bs[k]
            total += (-2 * bjk - 2 * ajk) * mp.log(abs(2 * mp.sin((ts[j] - ts[k]) / 2)))
            total += (2 * bjk - 2 * ajk) * mp.log(abs(2 * mp.sin((ts[j] + ts[k]) / 2)))

    if variant == "as_printed":
        alpha_last = alphas[-1] if m else a0
    else:
        alpha_last = ae
    total -= a0 * alpha_last * mp.log(2)

    total += log_barnes_g(1 + a0) - log_barnes_g(1 + 2 * a0) / 2
    total -= a0 * (V.value_at_one() - v0) / 2
    total += log_barnes_g(1 + ae) - log_barnes_g(1 + 2 * ae) / 2
    total -= ae * (V.value_at_minus_one() - v0) / 2
    for t, a in zip(ts, alphas):
        total -= 2 * a0 * a * mp.log(2 * mp.sin(t / 2))
        total -= 2 * ae * a * mp.log(2 * mp.cos(t / 2))

    return total + _combine_phases(phases)


def _fh_exponent(sym: FHSymbol):
    # alpha0^2 + alpha_end^2 + 2 sum_j (alpha_j^2 + b_j^2); the b^2 enters
    # with a plus because beta_j^2 = -b_j^2.
    total = sym.alpha0 ** 2 + sym.alpha_end ** 2
    for s in sym.singularities:
        total += 2 * (s.alpha ** 2 + s.beta_im ** 2)
    return total


def cue_fh_asym(sym: FHSymbol, n, variant="as_printed"):
    """Log prediction for the order-2n Toeplitz determinant of a singular symbol."""
    if n < 1:
        raise ValueError("n must be positive")
    log_value = (
        2 * fh_E_const(sym, variant)
        + 2 * n * _v0(sym.potential)
        + _fh_exponent(sym) * mp.log(2 * n)
    )
    return AsymPrediction(log_value=log_value, error_order="1+o(1)")


def fh_Cn(sym: FHSymbol, n):
    """Logs of the two label constants (C_n, C-tilde_n) for singular symbols."""
    if n < 1:
        raise ValueError("n must be positive")
    V = sym.potential
    v0 = _v0(V)
    a0, ae = sym.alpha0, sym.alpha_end
    half = mpf(1) / 2

    phase_c = []
    phase_ct = []
    log_c = (a0 + ae) * mp.log(2) - (a0 + ae) / 2 * mp.log(n) - mp.log(mp.pi) / 2
    log_c += log_gamma(half + a0) / 2 + log_gamma(half + ae) / 2
    log_c += (V.value_at_one() + V.value_at_minus_one() - 2 * v0) / 4
    log_ct = (a0 - ae) / 2 * mp.log(n)
    log_ct += log_gamma(half + ae) / 2 - log_gamma(half + a0) / 2
    log_ct += (V.value_at_minus_one() - V.value_at_one()) / 4
    for s in sym.singularities:
        beta = mp.mpc(0, s.beta_im)
        log_c += s.alpha * mp.log(2 * mp.sin(s.t))
        phase_c.append(-_I * beta * s.t + _I * mp.pi * beta / 2)
        log_ct -= s.alpha * mp.log(mp.tan(s.t / 2))
        phase_ct.append(-_I * mp.pi * beta / 2)
    log_c += _combine_phases(phase_c)
    log_ct += _combine_phases(phase_ct)
    return log_c, log_ct


def _fh_error_tag(sym: FHSymbol, n_or_N, size_name="n"):
    if sym.m == 0:
        return "O(1/%s)" % size_name
    return "O(1/(%s*min(t1,pi-tm)))" % size_name


def orth_fh_asym(sym: FHSymbol, n, label: EnsembleLabel, variant="as_printed"):
    """Log prediction for the exact label average of a singular symbol."""
    cue = cue_fh_asym(sym, n, variant)
    log_c, log_ct = fh_Cn(sym, n)
    if label.j == 0:
        lead = log_c
    elif label.j == 2:
        lead = -log_c
    else:
        lead = label.sign * log_ct
    return AsymPrediction(
        log_value=lead + cue.log_value / 2,
        error_order=_fh_error_tag(sym, n),
    )


def _require_no_endpoint_roots(sym: FHSymbol, what):
    if sym.alpha0 != 0 or sym.alpha_end != 0:
        raise ValueError("%s requires alpha0 = alpha_end = 0" % what)


def fh_F_envelope(sym: FHSymbol, n):
    """Log of the pairwise merging factor F, regularized with 1/n."""
    _require_no_endpoint_roots(sym, "fh_F_envelope")
    if n < 1:
        raise ValueError("n must be positive")
    inv_n = mpf(1) / n
    sgs = sym.singularities
    total = mpf(0)
    for j in range(len(sgs)):
        for k in range(j + 1, len(sgs)):
            aa = sgs[j].alpha * sgs[k].alpha
            bb = sgs[j].beta_im * sgs[k].beta_im
            total -= 2 * (aa + bb) * mp.log(mp.sin((sgs[k].t - sgs[j].t) / 2) + inv_n)
            total -= 2 * (aa - bb) * mp.log(mp.sin((sgs[j].t + sgs[k].t) / 2) + inv_n)
    return total


def orth_fh_envelope(sym: FHSymbol, n, label: EnsembleLabel):
    """Bounded-ratio envelope for the label average when singularities may merge."""
    _require_no_endpoint_roots(sym, "orth_fh_envelope")
    inv_n = mpf(1) / n
    total = fh_F_envelope(sym, n) + n * _v0(sym.potential)
    for s in sym.singularities:
        a, b = s.alpha, s.beta_im
        total += (a * a + b * b) * mp.log(n)
        if label.j == 0:
            total += (a - a * a + b * b) * mp.log(mp.sin(s.t) + inv_n)
        elif label.j == 2:
            total += (-a - a * a + b * b) * mp.log(mp.sin(s.t) + inv_n)
        else:
            total += (-label.sign * a - a * a + b * b) * mp.log(mp.sin(s.t / 2) + inv_n)
            total += (label.sign * a - a * a + b * b) * mp.log(mp.cos(s.t / 2) + inv_n)
    return AsymPrediction(log_value=total, error_order="e^{O(1)} envelope", envelope=True)


def phi_fh_asym(sym: FHSymbol, N, point, envelope=False):
    """Predicted monic-polynomial value at +1 or -1 for a singular symbol.

    The closed form covers root singularities at the evaluation points;
    with alpha0 = alpha_end = 0 the endpoint prefactor degenerates to 1
    (sqrt(pi)/Gamma(1/2)).  With ``envelope=True`` the merging-regime
    bounded-ratio form is returned instead; that form requires
    alpha0 = alpha_end = 0.
    """
    if point not in (1, -1):
        raise ValueError("point must be +1 or -1")
    sign = 1 if point == 1 else (-1) ** N
    if N < 1:
        raise ValueError("N must be positive")
    if envelope:
        _require_no_endpoint_roots(sym, "the merging-regime form")
        inv_n = mpf(2) / N
        total = mpf(0)
        for s in sym.singularities:
            edge = mp.sin(s.t / 2) if point == 1 else mp.cos(s.t / 2)
            total += -2 * s.alpha * mp.log(edge + inv_n)
        return AsymPrediction(
            log_value=total, error_order="e^{O(1)} envelope", envelope=True, sign=sign
        )
    V = sym.potential
    v0 = _v0(V)
    half = mpf(1) / 2
    if point == 1:
        a_here, a_there = sym.alpha0, sym.alpha_end
        total = (v0 - V.value_at_one()) / 2
    else:
        a_here, a_there = sym.alpha_end, sym.alpha0
        total = (v0 - V.value_at_minus_one()) / 2
    total += mp.log(mp.pi) / 2 + a_here * mp.log(N)
    total -= (2 * a_here + a_there) * mp.log(2)
    total -= log_gamma(a_here + half)
    for s in sym.singularities:
        edge = mp.sin(s.t / 2) if point == 1 else mp.cos(s.t / 2)
        total -= 2 * s.alpha * mp.log(2 * edge)
        total -= s.t * s.beta_im
        if point == 1:
            total += mp.pi * s.beta_im
    return AsymPrediction(
        log_value=total, error_order=_fh_error_tag(sym, N, "N"), sign=sign
    )


_tilde_cache = {}
_delta_cache = {}


def _arc_angle(gap: GapSymbol, u):
    return 2 * mp.asin(mp.sin(gap.t0 / 2) * mp.sin(u / 2))


def tilde_v_coeffs(gap: GapSymbol, K):
    """Cosine coefficients of the potential pulled back through the arc map.

    The map t -> 2 arcsin(sin(t0/2) sin(t/2)) sends cos(theta) to an
    affine function of cos(t), so a degree-d potential pulls back to a
    degree-d trigonometric polynomial: a fixed panel budget integrates
    it exactly to rounding, and coefficients beyond d vanish.
    """
    if K < 0:
        raise ValueError("K must be >= 0")
    V = gap.potential
    if V.is_zero():
        return [mpf(0)] * (K + 1)
    key = (V.coeffs, gap.t0, K, mp.prec)
    cached = _tilde_cache.get(key)
    if cached is not None:
        return list(cached)
    deg = max(V.degree, 0)
    npanels = max(8, (deg + K) // 8 + 2)
    nodes, weights = gauss_legendre_rule(32, mp.prec)
    h = mp.pi / npanels
    acc = [mpf(0)] * (K + 1)
    for p in range(npanels):
        mid = p * h + h / 2
        for x, w in zip(nodes, weights):
            t = mid + (h / 2) * x
            val = V.eval_angle(_arc_angle(gap, t)) * w * (h / 2)
            ct = mp.cos(t)
            c_prev, c_cur = mpf(1), ct
            acc[0] += val
            for k in range(1, K + 1):
                acc[k] += val * c_cur
                c_prev, c_cur = c_cur, 2 * ct * c_cur - c_prev
    out = [a / mp.pi for a in acc]
    _tilde_cache[key] = tuple(out)
    return out


def _delta_quadrature(gap: GapSymbol, npanels):
    s0 = mp.sin(gap.t0 / 2)
    V = gap.potential
    nodes, weights = gauss_legendre_rule(32, mp.prec)
    h = 2 * mp.pi / npanels
    acc_inf = mp.mpc(0)
    acc_minus = mpf(0)
    for p in range(npanels):
        mid = -mp.pi + p * h + h / 2
        for x, w in zip(nodes, weights):
            u = mid + (h / 2) * x
            theta = _arc_angle(gap, u)
            val = V.eval_angle(theta) * w * (h / 2)
            acc_inf += val * (1 + _I * mp.tan(theta / 2))
            acc_minus += val / (1 - (s0 * mp.sin(u / 2)) ** 2)
    return acc_inf, acc_minus


def delta_values(gap: GapSymbol):
    """Exterior-map functionals of the gap potential.

    Contour integrals over the supporting arc, reparametrized so the
    inverse-square-root endpoint behaviour of the kernel is absorbed by
    the Jacobian; the integrands are then analytic and periodic.  The
    value at infinity is accumulated in complex form and must come out
    real (the potential's evenness forces the odd part to cancel).
    """
    V = gap.potential
    if V.is_zero():
        return DeltaValues(log_delta_inf=mpf(0), log_delta_minus_at_m1=mpf(0))
    key = (V.coeffs, gap.t0, mp.prec)
    cached = _delta_cache.get(key)
    if cached is not None:
        return cached
    c0 = mp.cos(gap.t0 / 2)
    npanels = max(48, int(mp.ceil(24 / max(c0, mpf(1) / 32))))
    coarse = _delta_quadrature(gap, npanels)
    fine = _delta_quadrature(gap, 2 * npanels)
    for a, b in zip(coarse, fine):
        if abs(a - b) > mpf("1e-12") * max(mpf(1), abs(b)):
            raise ArithmeticError("arc quadrature failed to converge")
    acc_inf, acc_minus = fine
    re, im = mp.re(acc_inf), mp.im(acc_inf)
    if abs(im) > QUAD_IM_TOL * max(mpf(1), abs(re)):
        raise BranchConventionError(
            "imaginary residue %s in a functional that must be real" % mp.nstr(im, 8)
        )
    out = DeltaValues(
        log_delta_inf=-re / (4 * mp.pi),
        log_delta_minus_at_m1=-c0 * acc_minus / (4 * mp.pi),
    )
    _delta_cache[key] = out
    return out


def _h_exterior(z, t0):
    return z * mp.sqrt(1 - 2 * mp.cos(t0) / z + z ** -2)


def delta_log_at(gap: GapSymbol, z):
    """Diagnostic quadrature for log delta at a general off-circle point.

    The square-root factor is normalized to behave like z at infinity,
    with its cut on the complementary arc; inside the unit circle it is
    continued by the reciprocal identity (value 1 at the origin).
    """
    z = mp.mpmathify(z)
    r = abs(z)
    if r == 1:
        raise ValueError("evaluation point must be off the unit circle")
    if z == 0:
        hz = mpf(1)
    elif r > 1:
        hz = _h_exterior(z, gap.t0)
    else:
        hz = z * _h_exterior(1 / z, gap.t0)
    V = gap.potential
    if V.is_zero():
        return mp.mpc(0)
    c0 = mp.cos(gap.t0 / 2)
    npanels = 2 * max(48, int(mp.ceil(24 / max(c0, mpf(1) / 32))))
    nodes, weights = gauss_legendre_rule(32, mp.prec)
    h = 2 * mp.pi / npanels
    acc = mp.mpc(0)
    for p in range(npanels):
        mid = -mp.pi + p * h + h / 2
        for x, w in zip(nodes, weights):
            u = mid + (h / 2) * x
            theta = _arc_angle(gap, u)
            val = V.eval_angle(theta) * w * (h / 2)
            acc += val * (1 + _I * mp.tan(theta / 2)) / (mp.expj(theta) - z)
    return hz * acc / (4 * mp.pi)


def _gap_energy(gap: GapSymbol):
    # Returns (sum_k k*tilde_V_k^2, tilde_V_0).  Coefficients beyond the
    # potential's own degree vanish identically, so the sums are finite.
    deg = gap.potential.degree
    if deg < 1:
        return mpf(0), _v0(gap.potential)
    coeffs = tilde_v_coeffs(gap, deg)
    energy = mp.fsum(k * coeffs[k] ** 2 for k in range(1, deg + 1))
    return energy, coeffs[0]


def _gap_regime_tag(gap: GapSymbol, power):
    # Validity needs s no larger than tan(t0/4)^power; outside that the
    # stated error term degrades and the tag records it.
    if gap.s == 0:
        return "1+o(1)"
    if mp.log(gap.s) <= power * mp.log(mp.tan(gap.t0 / 4)):
        return "1+o(1)"
    return "1+o(1) [s above tan(t0/4)^%d: error bound degrades]" % power


def cue_gap_asym(gap: GapSymbol, n):
    """Log prediction for the order-2n Toeplitz determinant of a gap symbol."""
    if n < 1:
        raise ValueError("n must be positive")
    energy, tv0 = _gap_energy(gap)
    t0 = gap.t0
    log_value = (
        -mp.log(2 * n) / 4
        + 4 * n * n * mp.log(mp.sin(t0 / 2))
        + 2 * n * tv0
        + energy
        - mp.log(mp.cos(t0 / 2)) / 4
        + mp.log(2) / 12
        + 3 * zeta_prime_m1()
    )
    return AsymPrediction(log_value=log_value, error_order=_gap_regime_tag(gap, 4 * n))


def gap_constants(gap: GapSymbol, n):
    """Logs of the three label constants of the arc-support asymptotics.

    The tan-power in the third constant is n: this is forced by
    agreement with the explicit per-label displays (orth_gap_explicit)
    and with the s=0 hard-gap formula, and the exact finite-n route
    confirms it numerically.
    """
    if n < 1:
        raise ValueError("n must be positive")
    dv = delta_values(gap)
    v1 = gap.potential.value_at_one()
    t0 = gap.t0
    log2 = mp.log(2)
    ls4, lc4 = mp.log(mp.sin(t0 / 4)), mp.log(mp.cos(t0 / 4))
    common = -v1 / 4 + dv.log_delta_minus_at_m1 / 2 - dv.log_delta_inf
    log_c_odd = (2 * n - mpf(3) / 4) * log2 + n * ls4 + (3 * n - 1) * lc4 + common
    log_c_even = (2 * n + mpf(1) / 4) * log2 + n * ls4 + (3 * n + 1) * lc4 + common
    log_ct = (
        log2 / 4
        + n * mp.log(mp.tan(t0 / 4))
        - v1 / 4
        - dv.log_delta_minus_at_m1 / 2
    )
    return log_c_odd, log_c_even, log_ct


def orth_gap_explicit(gap: GapSymbol, n, label: EnsembleLabel):
    """Fully expanded per-label log prediction, assembled independently.

    Used as a self-check against the constant-times-square-root
    assembly in orth_gap_asym; the two must agree to rounding.
    """
    if n < 1:
        raise ValueError("n must be positive")
    energy, tv0 = _gap_energy(gap)
    dv = delta_values(gap)
    v1 = gap.potential.value_at_one()
    t0 = gap.t0
    log2 = mp.log(2)
    z3 = zeta_prime_m1()
    lsin = mp.log(mp.sin(t0 / 2))
    lcos = mp.log(mp.cos(t0 / 2))
    lone = mp.log(1 + mp.cos(t0 / 2))
    base = 3 * z3 / 2 + energy / 2 - lcos / 8 - mp.log(n) / 8 + n * tv0
    if label.j == 0:
        return (
            base
            + log2 / 6
            + v1 / 4
            + dv.log_delta_inf
            - dv.log_delta_minus_at_m1 / 2
            - lsin / 2
            + (2 * n * n - n + mpf(1) / 2) * lsin
            - (n - mpf(1) / 2) * lone
        )
    if label.j == 2:
        return (
            base
            + log2 / 6
            + mp.log(mp.cos(t0 / 4))
            + dv.log_delta_minus_at_m1 / 2
            - v1 / 4
            - dv.log_delta_inf
            + (2 * n * n + n) * lsin
            + n * lone
        )
    sg = label.sign
    return (
        base
        + sg * log2 / 4
        - log2 / 12
        - sg * v1 / 4
        - sg * dv.log_delta_minus_at_m1 / 2
        + (2 * n * n + sg * n) * lsin
        - sg * n * lone
    )


def orth_gap_asym(gap: GapSymbol, n, label: EnsembleLabel):
    """Log prediction for the exact label average of a gap symbol."""
    cue = cue_gap_asym(gap, n)
    log_c_odd, log_c_even, log_ct = gap_constants(gap, n)
    if label.j == 0:
        lead = -log_c_odd
    elif label.j == 2:
        lead = log_c_even
    else:
        lead = label.sign * log_ct
    log_value = lead + cue.log_value / 2
    explicit = orth_gap_explicit(gap, n, label)
    if abs(log_value - explicit) > mpf("1e-12") * (1 + abs(log_value)):
        raise AssemblyError(
            "gap prediction assemblies disagree: %s vs %s"
            % (mp.nstr(log_value, 12), mp.nstr(explicit, 12))
        )
    return AsymPrediction(log_value=log_value, error_order=cue.error_order)


def phi_gap_asym(gap: GapSymbol, N):
    """Predicted monic-polynomial values at (+1, -1) for a gap symbol."""
    if N < 1:
        raise ValueError("N must be positive")
    dv = delta_values(gap)
    v1 = gap.potential.value_at_one()
    t0 = gap.t0
    tag = _gap_regime_tag(gap, 2 * N)
    log_plus = (
        mp.log(2) / 2
        + mp.log(mp.cos((t0 - mp.pi + (-1) ** N * mp.pi) / 4))
        + N * mp.log(mp.sin(t0 / 2))
        - v1 / 2
        - dv.log_delta_inf
    )
    pred_plus = AsymPrediction(log_value=log_plus, error_order=tag)
    log_minus = (
        mp.log(mp.cos(t0 / 4))
        + N * mp.log(1 + mp.cos(t0 / 2))
        + dv.log_delta_minus_at_m1
        - dv.log_delta_inf
    )
    pred_minus = AsymPrediction(
        log_value=log_minus, error_order=tag, sign=(-1) ** N
    )
    return pred_plus, pred_minus


_EPSILON = {(0, 1): -1, (1, 1): 1, (1, -1): -1, (2, -1): 1}


def _n_tilde(label: EnsembleLabel, n):
    return mpf(2 * n + label.j - 1) / 2


def cor_gap0(label: EnsembleLabel, n, t0):
    """Universal hard-gap prediction at s = 0 for one label."""
    t0 = mp.mpmathify(t0)
    if not 0 < t0 < mp.pi:
        raise ValueError("t0 must lie in (0, pi)")
    if n < 1:
        raise ValueError("n must be positive")
    nt = _n_tilde(label, n)
    eps = _EPSILON[(label.j, label.sign)]
    lcos = mp.log(mp.cos(t0 / 2))
    log_value = (
        -mp.log(2) / 12
        + 3 * zeta_prime_m1() / 2
        + eps * (nt * mp.log(1 + mp.sin(t0 / 2)) - mp.log(2) / 4 - nt * lcos)
        + 2 * nt * nt * lcos
        - mp.log(nt * mp.sin(t0 / 2)) / 8
    )
    return AsymPrediction(log_value=log_value, error_order="1+o(1)")


def cbe_gap0(beta, N, t0):
    """Hard-gap prediction at s = 0 for the circular beta ensembles."""
    t0 = mp.mpmathify(t0)
    if not 0 < t0 < mp.pi:
        raise ValueError("t0 must lie in (0, pi)")
    if N < 1:
        raise ValueError("N must be positive")
    z3 = zeta_prime_m1()
    lcos = mp.log(mp.cos(t0 / 2))
    lsin = mp.log(1 + mp.sin(t0 / 2))
    lns = mp.log(N * mp.sin(t0 / 2))
    if beta == 1:
        log_value = (
            mpf(7) / 24 * mp.log(2) + 3 * z3 / 2
            + N * (lcos - lsin) / 2 + N * N * lcos / 2 - lns / 8
        )
    elif beta == 2:
        log_value = mp.log(2) / 12 + 3 * z3 + N * N * lcos - lns / 4
    elif beta == 4:
        log_value = (
            -mpf(4) / 3 * mp.log(2) + 3 * z3 / 2
            + N * (lsin - lcos) + 2 * N * N * lcos - lns / 8
        )
    else:
        raise ValueError("beta must be 1, 2, or 4")
    return AsymPrediction(log_value=log_value, error_order="1+o(1)")


def cor_gap_s(label: EnsembleLabel, n, t0, s):
    """Thinned-gap prediction at fixed s in (0,1) for one label."""
    t0 = mp.mpmathify(t0)
    s = mp.mpmathify(s)
    if not 0 < s < 1:
        raise ValueError("s must lie in (0, 1)")
    if not 0 < t0 < mp.pi:
        raise ValueError("t0 must lie in (0, pi)")
    nt = _n_tilde(label, n)
    eps = _EPSILON[(label.j, label.sign)]
    ls = mp.log(s)
    log_value = (
        -eps * ls / 4
        + mp.log(abs2_barnes_g(0, -ls / (2 * mp.pi)))
        + ls * ls / (4 * mp.pi ** 2) * mp.log(4 * nt * mp.sin(t0))
        + nt * t0 / mp.pi * ls
    )
    return AsymPrediction(log_value=log_value, error_order="1+o(1)")


def cbe_gap_s(beta, N, t0, s):
    """Thinned-gap prediction at fixed s in (0,1) for the circular beta ensembles."""
    t0 = mp.mpmathify(t0)
    s = mp.mpmathify(s)
    if not 0 < s < 1:
        raise ValueError("s must lie in (0, 1)")
    if not 0 < t0 < mp.pi:
        raise ValueError("t0 must lie in (0, pi)")
    if N < 1:
        raise ValueError("N must be positive")
    ls = mp.log(s)
    tail = N * t0 / mp.pi * ls
    if beta == 1:
        log_value = (
            mp.log(2) + ls / 2 - mp.log(1 + s)
            + mp.log(abs2_barnes_g(0, -ls / mp.pi))
            + ls * ls / mp.pi ** 2 * mp.log(2 * N * mp.sin(t0))
            + tail
        )
    elif beta == 2:
        log_value = (
            2 * mp.log(abs2_barnes_g(0, -ls / (2 * mp.pi)))
            + ls * ls / (2 * mp.pi ** 2) * mp.log(2 * N * mp.sin(t0))
            + tail
        )
    elif beta == 4:
        log_value = (
            mp.log(1 + mp.sqrt(s)) - mp.log(2) - ls / 4
            + mp.log(abs2_barnes_g(0, -ls / (2 * mp.pi)))
            + ls * ls / (4 * mp.pi ** 2) * mp.log(4 * N * mp.sin(t0))
            + tail
        )
    else:
        raise ValueError("beta must be 1, 2, or 4")
    return AsymPrediction(log_value=log_value, error_order="1+o(1)")


def cor_gap_envelope(label_or_beta, n, t0, s):
    """Uniform bounded-ratio envelope for thinned-gap generating functions.

    Pass an EnsembleLabel (with its free-angle count n) or a beta in
    {1, 2, 4} (with the full matrix size); the envelope exponent is
    log^2(s)/(4 pi^2) for labels and log^2(s)/(beta pi^2) otherwise.
    Valid for any s > 0 and t0 in [0, pi] inclusive.
    """
    t0 = mp.mpmathify(t0)
    s = mp.mpmathify(s)
    if not s > 0:
        raise ValueError("s must be positive")
    if not 0 <= t0 <= mp.pi:
        raise ValueError("t0 must lie in [0, pi]")
    if isinstance(label_or_beta, EnsembleLabel):
        denom = 4
    elif label_or_beta in (1, 2, 4):
        denom = label_or_beta
    else:
        raise ValueError("expected an EnsembleLabel or beta in {1, 2, 4}")
    ls = mp.log(s)
    log_value = (
        ls * ls / (denom * mp.pi ** 2) * mp.log(n * mp.sin(t0) + 1)
        + n * t0 / mp.pi * ls
    )
    return AsymPrediction(
        log_value=log_value, error_order="e^{O(1)} envelope", envelope=True
    )
