"""Exact finite-n averages over the four orthogonal-ensemble labels.

Two independent routes compute the same multiplicative average: small
structured determinants built from symbol moments, and a reflection
route through the orthogonal polynomials on the unit circle.  They
share no code beyond the moment sequence, which is what makes their
agreement a meaningful check.  On top of the averages sit the exact
determinant identities connecting them, gap generating functions,
occupancy distributions, and the size-interlacing combinations that
produce the beta = 1 and beta = 4 circular ensembles.
"""

from dataclasses import dataclass

from mpmath import mp, mpf

from .linalg import LogValue, th_det, toeplitz_det
from .moments import MomentSequence, compute_moments
from .opuc import OpucState, szego_recursion, toeplitz_logdet_szego
from .symbols import EnsembleLabel, GapSymbol, LaurentPotential, ZERO_POTENTIAL

ROUTE_TH = "TH"
ROUTE_OPUC = "OPUC"


class RadicandError(ArithmeticError):
    """A square-root argument that must be positive came out otherwise.

    The reflection-route radicands are positive in exact arithmetic, so
    a violation signals precision exhaustion, not mathematics.
    """


@dataclass(frozen=True)
class ExactAverage:
    log_value: LogValue
    label: EnsembleLabel
    n: int
    route: str

    def value(self):
        return self.log_value.value()


def _require_moments(ms: MomentSequence, needed, who):
    if ms.M < needed:
        raise ValueError("%s needs moments through m=%d, have %d" % (who, needed, ms.M))


def exact_average_th(ms: MomentSequence, n, label: EnsembleLabel, precision_bits=256):
    """Exact label average from one structured determinant.

    The half factor on the (0,+) label normalizes the doubled corner row
    of its matrix kind; the other kinds are already normalized.
    """
    if n < 1:
        raise ValueError("n must be positive")
    _require_moments(ms, 2 * n, "exact_average_th")
    kw = {"precision_bits": precision_bits}
    if label.j == 0:
        det = th_det(ms, n, "plus0", **kw)
        log_value = det / LogValue.from_value(mpf(2))
    elif label.j == 2:
        log_value = th_det(ms, n, "minus2", **kw)
    elif label.sign > 0:
        log_value = th_det(ms, n, "minus1", **kw)
    else:
        log_value = th_det(ms, n, "plus1", **kw)
    return ExactAverage(log_value=log_value, label=label, n=n, route=ROUTE_TH)


def exact_average_opuc(ms: MomentSequence, n, label: EnsembleLabel, state: OpucState):
    """Exact label average from the reflection route.

    Combines the even Toeplitz determinant with boundary values of the
    monic orthogonal polynomials; each label average is the square root
    of a positive combination, and positivity is asserted rather than
    assumed away.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if state.N < 2 * n:
        raise ValueError("recursion state depth %d < 2n = %d" % (state.N, 2 * n))
    g0 = ms[0]
    if abs(mp.exp(state.log_norm_ratios[0]) - g0) > mpf("1e-20") * max(mpf(1), abs(g0)):
        raise ValueError("recursion state does not match the moment sequence")
    det = toeplitz_logdet_szego(state, 2 * n)
    phi_one = state.phi_one
    phi_minus = state.phi_minus_one
    if label.j == 0:
        prod = LogValue.from_value(-phi_one[2 * n - 1] * phi_minus[2 * n - 1])
        rad = det / prod
    elif label.j == 2:
        prod = LogValue.from_value(phi_one[2 * n] * phi_minus[2 * n])
        rad = prod * det
    else:
        num = phi_one[2 * n] if label.sign > 0 else phi_minus[2 * n]
        den = phi_minus[2 * n] if label.sign > 0 else phi_one[2 * n]
        rad = LogValue.from_value(num / den) * det
    if rad.sign <= 0:
        raise RadicandError(
            "nonpositive radicand for label %s at n=%d" % (label, n)
        )
    return ExactAverage(log_value=rad.sqrt(), label=label, n=n, route=ROUTE_OPUC)


@dataclass(frozen=True)
class IdentityReport:
    """Relative residuals of the exact determinant identities."""

    residuals: dict
    max_residual: object


def _relative_residual(lhs: LogValue, rhs: LogValue):
    if lhs.sign != rhs.sign:
        return mp.inf
    if lhs.sign == 0:
        return mpf(0)
    return abs(mp.expm1(lhs.log_abs - rhs.log_abs))


def check_identities(ms: MomentSequence, n, precision_bits=256):
    """Exact finite-n identity suite connecting the two routes.

    Every identity holds exactly; the returned residuals measure only
    the numerics.  Both factorizations of the Toeplitz determinant, the
    four boundary-value factorizations, and the four squared forms are
    checked at the given order.
    """
    if n < 1:
        raise ValueError("n must be positive")
    _require_moments(ms, 2 * n + 2, "check_identities")
    state = szego_recursion(ms, 2 * n + 2, precision_bits)
    kw = {"precision_bits": precision_bits}

    t_2n = toeplitz_det(ms, 2 * n, **kw)
    t_odd = toeplitz_det(ms, 2 * n + 1, **kw)
    plus0_n = th_det(ms, n, "plus0", **kw)
    plus0_n1 = th_det(ms, n + 1, "plus0", **kw)
    minus2_n = th_det(ms, n, "minus2", **kw)
    minus1_n = th_det(ms, n, "minus1", **kw)
    minus1_n1 = th_det(ms, n + 1, "minus1", **kw)
    plus1_n = th_det(ms, n, "plus1", **kw)
    plus1_n1 = th_det(ms, n + 1, "plus1", **kw)
    half = LogValue.from_value(mpf(2))

    p_even = LogValue.from_value(state.phi_one[2 * n])
    q_even = LogValue.from_value(state.phi_minus_one[2 * n])
    p_odd = LogValue.from_value(state.phi_one[2 * n + 1])
    q_odd = LogValue.from_value(state.phi_minus_one[2 * n + 1])
    p_prev = LogValue.from_value(state.phi_one[2 * n - 1])
    q_prev = LogValue.from_value(state.phi_minus_one[2 * n - 1])

    residuals = {
        "t_even_factorization": _relative_residual(t_2n, minus1_n * plus1_n),
        "t_odd_factorization": _relative_residual(t_odd, (plus0_n1 / half) * minus2_n),
        "phi_even_plus": _relative_residual(p_even * t_2n, minus2_n * minus1_n),
        "phi_even_minus": _relative_residual(q_even * t_2n, minus2_n * plus1_n),
        "phi_odd_plus": _relative_residual(p_odd * t_odd, minus1_n1 * minus2_n),
        "phi_odd_minus": _relative_residual(
            q_odd * t_odd, (plus1_n1 * minus2_n) * LogValue(mpf(0), -1)
        ),
        "square_plus0": _relative_residual(
            (plus0_n / half) ** 2, t_2n / ((p_prev * q_prev) * LogValue(mpf(0), -1))
        ),
        "square_minus2": _relative_residual(minus2_n ** 2, (p_even * q_even) * t_2n),
        "square_minus1": _relative_residual(minus1_n ** 2, (p_even / q_even) * t_2n),
        "square_plus1": _relative_residual(plus1_n ** 2, (q_even / p_even) * t_2n),
    }
    return IdentityReport(residuals=residuals, max_residual=max(residuals.values()))


def gap_generating(label: EnsembleLabel, n, t0, s, V: LaurentPotential = ZERO_POTENTIAL,
                   precision_bits=256, tol=None):
    """Generating function of the eigenangle count in (0, t0), thinned by s.

    The count event sits at the wrong end of the circle for the
    determinant formulas, so the average is taken over the reflected
    ensemble instead: angles map through t -> pi - t, which reflects the
    potential, replaces t0 by pi - t0, and swaps the two odd labels.
    That one reflection is centralized here.
    """
    t0 = mp.mpmathify(t0)
    s = mp.mpmathify(s)
    if not 0 < t0 < mp.pi:
        raise ValueError("t0 must lie in (0, pi)")
    if not 0 <= s <= 1:
        raise ValueError("s must lie in [0, 1]")
    if n < 1:
        raise ValueError("n must be positive")
    reflected = GapSymbol(potential=V.reflected(), t0=mp.pi - t0, s=s)
    ms = compute_moments(reflected, 2 * n, tol=tol, precision_bits=precision_bits)
    avg = exact_average_th(ms, n, label.reflected(), precision_bits=precision_bits)
    return ExactAverage(log_value=avg.log_value, label=label, n=n, route=ROUTE_TH)


def occupancy_distribution(label: EnsembleLabel, n, t0, precision_bits=256):
    """Distribution of the number of eigenangles in (0, t0).

    The generating function is a degree-n polynomial in the thinning
    parameter; sampling it at n+1 Chebyshev nodes mapped into (0, 1]
    and solving the Vandermonde system recovers the probabilities.
    """
    if n < 1:
        raise ValueError("n must be positive")
    with mp.workprec(max(precision_bits, 2 * n + 64)):
        nodes = []
        for i in range(n + 1):
            x = mp.cos(mp.pi * (2 * i + 1) / (2 * (n + 1)))
            nodes.append((x + 1) / 2)
        values = [
            gap_generating(label, n, t0, si, precision_bits=precision_bits).value()
            for si in nodes
        ]
        coeffs = _solve_vandermonde(nodes, values)
    probs = []
    for c in coeffs:
        if c < 0:
            if c < mpf("-1e-12"):
                raise ArithmeticError(
                    "occupancy solve produced %s; increase precision_bits" % mp.nstr(c, 6)
                )
            c = mpf(0)
        probs.append(c)
    total = mp.fsum(probs)
    if abs(total - 1) > mpf("1e-9"):
        raise ArithmeticError(
            "occupancy probabilities sum to %s; increase precision_bits" % mp.nstr(total, 12)
        )
    return probs


def _solve_vandermonde(nodes, values):
    # Dense Gaussian elimination with partial pivoting; the system is
    # (n+1)x(n+1) at extended precision, conditioning is absorbed there.
    size = len(nodes)
    rows = []
    for i in range(size):
        row = [mpf(1)]
        for _ in range(size - 1):
            row.append(row[-1] * nodes[i])
        row.append(mp.mpmathify(values[i]))
        rows.append(row)
    for col in range(size):
        pivot = max(range(col, size), key=lambda r: abs(rows[r][col]))
        if rows[pivot][col] == 0:
            raise ArithmeticError("singular occupancy system")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        for r in range(col + 1, size):
            factor = rows[r][col] / rows[col][col]
            if factor == 0:
                continue
            for c in range(col, size + 1):
                rows[r][c] -= factor * rows[col][c]
    out = [mpf(0)] * size
    for col in range(size - 1, -1, -1):
        acc = rows[col][size]
        for c in range(col + 1, size):
            acc -= rows[col][c] * out[c]
        out[col] = acc / rows[col][col]
    return out


def cbe_generating(beta, N, t0, s, precision_bits=256):
    """Thinned-gap generating function for the beta = 1 or beta = 4 ensembles.

    Assembled from the label averages by the exact size-interlacing
    identities; the even and odd beta = 1 cases combine different labels.
    """
    s = mp.mpmathify(s)
    if s < 0:
        raise ValueError("s must be nonnegative")
    if beta == 1:
        if N < 1:
            raise ValueError("N must be positive")
        s2 = s * s
        if N % 2 == 1:
            n = (N - 1) // 2
            first = (
                gap_generating(EnsembleLabel(2, -1), n, t0, s2,
                               precision_bits=precision_bits).value()
                if n >= 1 else mpf(1)
            )
            second = gap_generating(EnsembleLabel(0, 1), n + 1, t0, s2,
                                    precision_bits=precision_bits).value()
            return (s * first + second) / (1 + s)
        n = N // 2
        plus = gap_generating(EnsembleLabel(1, 1), n, t0, s2,
                              precision_bits=precision_bits).value()
        minus = gap_generating(EnsembleLabel(1, -1), n, t0, s2,
                               precision_bits=precision_bits).value()
        return (s * plus + minus) / (1 + s)
    if beta == 4:
        if N < 1:
            raise ValueError("N must be positive")
        plus = gap_generating(EnsembleLabel(1, 1), N, t0, s,
                              precision_bits=precision_bits).value()
        minus = gap_generating(EnsembleLabel(1, -1), N, t0, s,
                               precision_bits=precision_bits).value()
        return (plus + minus) / 2
    raise ValueError("beta must be 1 or 4")
