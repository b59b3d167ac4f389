"""Monic orthogonal polynomials on the unit circle via the Szego recursion.

For an even positive symbol the recursion coefficients are real, so the
whole ladder runs in real arithmetic.  The state carries, for every degree
k up to N: the recursion coefficient alpha_k, the squared norm h_k of the
monic polynomial (as log h_k), and the boundary values Phi_k(1), Phi_k(-1).
The Toeplitz determinant is recovered as det T_N = prod_{k<N} h_k.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpf

from .linalg import LogValue


class PrecisionExhausted(ArithmeticError):
    """Recursion coefficient too close to the unit circle for the working
    precision; results beyond this step would be noise."""

    def __init__(self, step, alpha):
        self.step = step
        self.alpha = alpha
        super().__init__(
            f"recursion coefficient at step {step} within "
            f"{mp.nstr(1 - abs(alpha), 6)} of the unit circle"
        )


class RecursionInvariantError(ArithmeticError):
    """A structural sign invariant of the recursion failed, which for a
    positive even symbol can only come from numerical breakdown."""


@dataclass(frozen=True)
class OpucState:
    """Recursion output up to degree N.

    alphas[k] for k < N; log_norm_ratios[k] = log h_k for k <= N;
    phi_one[k] = Phi_k(1) and phi_minus_one[k] = Phi_k(-1) for k <= N.
    """

    N: int
    precision_bits: int
    alphas: tuple
    log_norm_ratios: tuple
    phi_one: tuple
    phi_minus_one: tuple


def szego_recursion(ms, N, precision_bits=256):
    """Run the recursion to degree N against the moment inner product.

    Needs moments up to index N.  Raises PrecisionExhausted when
    1 - |alpha_k| < 10^(-precision_bits/8).
    """
    if N < 0:
        raise ValueError("N must be >= 0")
    if ms.M < N:
        raise ValueError(f"need moments up to index {N}, have {ms.M}")
    with mp.workprec(precision_bits):
        guard = mpf(10) ** (-mpf(precision_bits) / 8)
        g0 = ms[0]
        if g0 <= 0:
            raise RecursionInvariantError("zeroth moment must be positive")
        alphas = []
        log_h = [mp.log(g0)]
        p = [mpf(1)]
        q = [mpf(1)]
        h = g0
        coeffs = [mpf(1)]  # coefficients of the monic Phi_k, degree k
        for k in range(N):
            num = mp.fsum(coeffs[j] * ms[j + 1] for j in range(k + 1))
            alpha = num / h
            if 1 - abs(alpha) < guard:
                raise PrecisionExhausted(k, alpha)
            alphas.append(alpha)
            # z*Phi_k minus alpha times the reversed (degree <= k) part;
            # the leading coefficient must stay exactly 1.
            new_coeffs = [mpf(0)] + coeffs
            for j in range(k + 1):
                new_coeffs[j] -= alpha * coeffs[k - j]
            coeffs = new_coeffs
            p.append((1 - alpha) * p[k])
            q.append(-q[k] - alpha * ((-1) ** k) * q[k])
            h = (1 - alpha * alpha) * h
            log_h.append(log_h[-1] + mp.log1p(-alpha * alpha))
            if p[-1] <= 0:
                raise RecursionInvariantError(f"Phi_{k+1}(1) must stay positive")
            if q[-1] * ((-1) ** (k + 1)) <= 0:
                raise RecursionInvariantError(
                    f"Phi_{k+1}(-1) must carry sign (-1)^{k+1}"
                )
        return OpucState(
            N=N,
            precision_bits=precision_bits,
            alphas=tuple(alphas),
            log_norm_ratios=tuple(log_h),
            phi_one=tuple(p),
            phi_minus_one=tuple(q),
        )


def toeplitz_logdet_szego(state: OpucState, N):
    """LogValue of det T_N from the recursion norms; N <= state.N."""
    if N < 0:
        raise ValueError("N must be >= 0")
    if N > state.N:
        raise ValueError(f"state holds degrees up to {state.N}, asked for {N}")
    if N == 0:
        return LogValue.one()
    with mp.workprec(state.precision_bits):
        return LogValue(mp.fsum(state.log_norm_ratios[:N]), 1)
