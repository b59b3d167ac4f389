"""Fourier coefficients of even circle symbols.

g_m = (1/pi) * integral_0^pi g(e^{it}) cos(mt) dt, computed by composite
Gauss-Legendre quadrature on a panel decomposition that splits at every
discontinuity and grades geometrically into algebraic zeros.  All moments
share one decomposition and one symbol evaluation per node; the cos(mt)
values come from the Chebyshev three-term recurrence.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpf

from .symbols import endpoint_grading, eval_symbol, singular_angles

GL_NODES_PER_PANEL = 32
MAX_GRADING_DEPTH = 60


class MomentToleranceError(ArithmeticError):
    """Raised when panel refinement cannot certify the requested tolerance.

    Carries the best values computed and the achieved error estimate.
    """

    def __init__(self, achieved, moments):
        self.achieved = achieved
        self.moments = moments
        super().__init__(
            f"moment quadrature reached error estimate {mp.nstr(achieved, 6)}, "
            "tolerance not met"
        )


@dataclass(frozen=True)
class MomentSequence:
    """Moments g_0..g_M of an even symbol with a shared error bound."""

    g: tuple
    M: int
    err_bound: object

    def __post_init__(self):
        if len(self.g) != self.M + 1:
            raise ValueError("moment list length must be M + 1")

    def __getitem__(self, m):
        # evenness: g_{-m} = g_m
        return self.g[abs(m)]

    def __len__(self):
        return self.M + 1


_gl_cache = {}


def gauss_legendre_rule(n, prec):
    """Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].

    Newton iteration on the Legendre polynomial, run at elevated precision
    and cached per (n, prec).
    """
    key = (n, prec)
    cached = _gl_cache.get(key)
    if cached is not None:
        return cached
    with mp.workprec(prec + 40):
        nodes = []
        weights = []
        for i in range(n):
            # Chebyshev-like initial guess, then Newton on P_n
            x = mp.cos(mp.pi * (i + mpf(3) / 4) / (n + mpf(1) / 2))
            for _ in range(100):
                p_prev, p_cur = mpf(1), x
                for k in range(2, n + 1):
                    p_prev, p_cur = p_cur, ((2 * k - 1) * x * p_cur - (k - 1) * p_prev) / k
                dp = n * (x * p_cur - p_prev) / (x * x - 1)
                dx = p_cur / dp
                x -= dx
                if abs(dx) < mp.eps * 16:
                    break
            p_prev, p_cur = mpf(1), x
            for k in range(2, n + 1):
                p_prev, p_cur = p_cur, ((2 * k - 1) * x * p_cur - (k - 1) * p_prev) / k
            dp = n * (x * p_cur - p_prev) / (x * x - 1)
            nodes.append(+x)
            weights.append(2 / ((1 - x * x) * dp * dp))
    nodes = tuple(mpf(x) for x in nodes)
    weights = tuple(mpf(w) for w in weights)
    _gl_cache[key] = (nodes, weights)
    return nodes, weights


def _graded_panels(a, b, grade_left, grade_right, cap, depth):
    """Panel list for one analytic segment.

    Geometric refinement (ratio 1/2, `depth` levels) runs only toward ends
    flagged as algebraic zeros; every panel is further capped at length `cap`.
    """
    panels = []
    if grade_left and grade_right:
        mid = (a + b) / 2
        panels.extend(_graded_panels(a, mid, True, False, cap, depth))
        panels.extend(_graded_panels(mid, b, False, True, cap, depth))
        return panels
    if not grade_left and not grade_right:
        length = b - a
        pieces = max(1, int(mp.ceil(length / cap)))
        step = length / pieces
        return [(a + i * step, a + (i + 1) * step) for i in range(pieces)]
    if grade_right:
        mirrored = _graded_panels(-b, -a, True, False, cap, depth)
        return [(-q, -p) for (p, q) in reversed(mirrored)]
    # graded toward a: dyadic shells closing on the left endpoint
    length = b - a
    cuts = [a + length / 2 ** k for k in range(depth + 1)]
    panels.extend(_graded_panels(a, cuts[depth], False, False, cap, depth))
    for k in range(depth, 0, -1):
        panels.extend(_graded_panels(cuts[k], cuts[k - 1], False, False, cap, depth))
    return panels


def _split_all(panels):
    out = []
    for (a, b) in panels:
        mid = (a + b) / 2
        out.append((a, mid))
        out.append((mid, b))
    return out


def _integrate(sym, panels, M, nodes, weights):
    """Accumulate (1/pi) * integral over the panels of g(t) cos(mt) for m <= M."""
    acc = [mpf(0)] * (M + 1)
    for (a, b) in panels:
        half = (b - a) / 2
        mid = (a + b) / 2
        for x, w in zip(nodes, weights):
            t = mid + half * x
            wg = half * w * eval_symbol(sym, t)
            acc[0] += wg
            if M == 0:
                continue
            ct = mp.cos(t)
            c_prev = mpf(1)
            c_cur = ct
            acc[1] += wg * ct
            two_ct = 2 * ct
            for m in range(2, M + 1):
                c_prev, c_cur = c_cur, two_ct * c_cur - c_prev
                acc[m] += wg * c_cur
    inv_pi = 1 / mp.pi
    return [v * inv_pi for v in acc]


def compute_moments(sym, M, tol=None, precision_bits=256):
    """Moments g_0..g_M of the symbol, certified against panel refinement.

    The error estimate is the max-over-m change under halving every panel;
    at most two refinement rounds run before MomentToleranceError.
    """
    if M < 0:
        raise ValueError("M must be >= 0")
    with mp.workprec(precision_bits):
        if tol is None:
            tol = mpf("1e-30")
        else:
            tol = mpf(tol)
        if tol <= 0:
            raise ValueError("tol must be positive")
        depth = min(int(mp.ceil(-mp.log(tol) / mp.log(2))), MAX_GRADING_DEPTH)
        cap = mp.pi / (4 * max(M, 1))
        grade0, grade_pi = endpoint_grading(sym)
        interior = singular_angles(sym)

        breaks = [mpf(0)]
        flags = [grade0]
        for angle, algebraic in interior:
            breaks.append(angle)
            flags.append(algebraic)
        breaks.append(+mp.pi)
        flags.append(grade_pi)

        panels = []
        for i in range(len(breaks) - 1):
            panels.extend(
                _graded_panels(breaks[i], breaks[i + 1], flags[i], flags[i + 1], cap, depth)
            )

        nodes, weights = gauss_legendre_rule(GL_NODES_PER_PANEL, mp.prec)
        coarse = _integrate(sym, panels, M, nodes, weights)
        for _ in range(2):
            panels = _split_all(panels)
            fine = _integrate(sym, panels, M, nodes, weights)
            est = max(abs(f - c) for f, c in zip(fine, coarse))
            if est <= tol:
                return MomentSequence(g=tuple(fine), M=M, err_bound=est)
            coarse = fine
        raise MomentToleranceError(est, MomentSequence(g=tuple(fine), M=M, err_bound=est))


def moments_of_scaled(ms: MomentSequence, c):
    """Moments of c*g for a positive constant c."""
    c = mpf(c)
    if c <= 0:
        raise ValueError("scale factor must be positive")
    return MomentSequence(
        g=tuple(c * v for v in ms.g), M=ms.M, err_bound=c * ms.err_bound
    )
