"""Sign/log-magnitude determinants of moment-built matrices.

Determinants here range over hundreds of orders of magnitude, so every
result is carried as a LogValue (sign plus log of absolute value) and the
LU elimination sums pivot logs instead of multiplying pivots.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpf

TH_KINDS = ("plus0", "minus2", "minus1", "plus1")

# (sign, offset) of the Hankel part g_{j+k+offset} for each kind
_TH_PARAMS = {
    "plus0": (1, 0),
    "minus2": (-1, 2),
    "minus1": (-1, 1),
    "plus1": (1, 1),
}


@dataclass(frozen=True)
class LogValue:
    """A real number stored as sign * exp(log_abs); sign 0 encodes zero."""

    log_abs: object
    sign: int

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or 1")
        object.__setattr__(self, "log_abs", mpf(self.log_abs) if self.sign else mpf("-inf"))

    @classmethod
    def from_value(cls, x):
        x = mpf(x)
        if x == 0:
            return cls(mpf("-inf"), 0)
        return cls(mp.log(abs(x)), 1 if x > 0 else -1)

    @classmethod
    def one(cls):
        return cls(mpf(0), 1)

    @classmethod
    def zero(cls):
        return cls(mpf("-inf"), 0)

    def value(self):
        if self.sign == 0:
            return mpf(0)
        return self.sign * mp.exp(self.log_abs)

    def is_zero(self):
        return self.sign == 0

    def __mul__(self, other):
        if isinstance(other, LogValue):
            if self.sign == 0 or other.sign == 0:
                return LogValue.zero()
            return LogValue(self.log_abs + other.log_abs, self.sign * other.sign)
        return self * LogValue.from_value(other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, LogValue):
            other = LogValue.from_value(other)
        if other.sign == 0:
            raise ZeroDivisionError("division by LogValue zero")
        if self.sign == 0:
            return LogValue.zero()
        return LogValue(self.log_abs - other.log_abs, self.sign * other.sign)

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("LogValue powers must be integers")
        if self.sign == 0:
            if k <= 0:
                raise ZeroDivisionError("zero to a nonpositive power")
            return LogValue.zero()
        return LogValue(k * self.log_abs, self.sign if k % 2 else 1)

    def sqrt(self):
        if self.sign < 0:
            raise ValueError("square root of a negative LogValue")
        if self.sign == 0:
            return LogValue.zero()
        return LogValue(self.log_abs / 2, 1)

    def __repr__(self):
        if self.sign == 0:
            return "LogValue(0)"
        s = "" if self.sign > 0 else "-"
        return f"LogValue({s}exp({mp.nstr(self.log_abs, 8)}))"


def det_lu(matrix, precision_bits=256):
    """LogValue determinant by partial-pivot LU elimination.

    `matrix` is a square list of lists; entries are copied and coerced to
    mpf at the requested precision (>= 53 bits).
    """
    if precision_bits < 53:
        raise ValueError("precision_bits must be >= 53")
    n = len(matrix)
    for row in matrix:
        if len(row) != n:
            raise ValueError("matrix must be square")
    if n == 0:
        return LogValue.one()
    with mp.workprec(precision_bits):
        a = [[mpf(x) for x in row] for row in matrix]
        sign = 1
        log_det = mpf(0)
        for col in range(n):
            pivot_row = max(range(col, n), key=lambda r: abs(a[r][col]))
            pivot = a[pivot_row][col]
            if pivot == 0:
                return LogValue.zero()
            if pivot_row != col:
                a[col], a[pivot_row] = a[pivot_row], a[col]
                sign = -sign
            if pivot < 0:
                sign = -sign
            log_det += mp.log(abs(pivot))
            row_c = a[col]
            for r in range(col + 1, n):
                factor = a[r][col] / pivot
                if factor == 0:
                    continue
                row_r = a[r]
                for c in range(col + 1, n):
                    row_r[c] -= factor * row_c[c]
        return LogValue(log_det, sign)


def toeplitz_matrix(ms, N):
    """(g_{j-k}) for 0 <= j, k < N."""
    return [[ms[j - k] for k in range(N)] for j in range(N)]


def toeplitz_det(ms, N, precision_bits=256):
    """LogValue of det(g_{j-k})_{0 <= j,k < N}; N = 0 gives 1."""
    if N == 0:
        return LogValue.one()
    return det_lu(toeplitz_matrix(ms, N), precision_bits)


def th_matrix(ms, n, kind):
    """Toeplitz+Hankel matrix g_{j-k} + sign * g_{j+k+offset} of size n."""
    try:
        sign, offset = _TH_PARAMS[kind]
    except KeyError:
        raise ValueError(f"kind must be one of {TH_KINDS}, got {kind!r}") from None
    return [
        [ms[j - k] + sign * ms[j + k + offset] for k in range(n)]
        for j in range(n)
    ]


def th_det(ms, n, kind, precision_bits=256):
    """LogValue of the size-n Toeplitz+Hankel determinant of the given kind.

    kind: 'plus0' -> g_{j-k}+g_{j+k}, 'minus2' -> g_{j-k}-g_{j+k+2},
    'minus1' -> g_{j-k}-g_{j+k+1}, 'plus1' -> g_{j-k}+g_{j+k+1}.
    n = 0 gives 1.
    """
    if n == 0:
        return LogValue.one()
    return det_lu(th_matrix(ms, n, kind), precision_bits)
