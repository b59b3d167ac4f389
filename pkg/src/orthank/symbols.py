"""Symbol families on the unit circle.

A symbol here is the even, nonnegative weight g(e^{it}) whose Fourier
coefficients feed every determinant and recursion downstream.  Two families
are supported:

* ``FHSymbol``: e^{V} times root factors |e^{it} -+ 1|^{2a} at the points
  +-1, and paired root/jump factors at interior angles t_j in (0, pi).
  Jumps are parametrized by the imaginary part of the exponent (beta = i*b),
  which keeps every evaluation in real arithmetic.
* ``GapSymbol``: e^{V} on the closed arc |t| <= t0 and s * e^{V} outside.

All evaluation runs at mpmath's current working precision; wrap calls in
``mp.workprec(bits)`` to control it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from mpmath import mp, mpf


class SymbolError(ValueError):
    """Invalid symbol parameters or evaluation at a forbidden point."""


def _to_mpf(x):
    """Coerce to mpf. Floats and ints convert exactly; strings parse at the
    current working precision."""
    if isinstance(x, mpf):
        return x
    return mpf(x)


def principal_angle(x):
    """Reduce an angle to the interval (-pi, pi]."""
    two_pi = 2 * mp.pi
    y = x - two_pi * mp.floor((x + mp.pi) / two_pi)
    # guard against boundary rounding in the floor
    if y <= -mp.pi:
        y += two_pi
    elif y > mp.pi:
        y -= two_pi
    return y


@dataclass(frozen=True)
class LaurentPotential:
    """Real even trigonometric polynomial V(e^{it}) = V_0 + 2 sum_k V_k cos(kt).

    ``coeffs[k]`` holds V_k for k = 0..K; the symmetric coefficient
    V_{-k} = V_k is implied.  An empty tuple means V = 0.
    """

    coeffs: tuple = ()

    def __post_init__(self):
        vals = tuple(_to_mpf(c) for c in self.coeffs)
        for c in vals:
            if not mp.isfinite(c):
                raise SymbolError("potential coefficients must be finite")
        object.__setattr__(self, "coeffs", vals)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -1

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def eval_angle(self, t):
        """V(e^{it})."""
        if not self.coeffs:
            return mpf(0)
        total = self.coeffs[0]
        for k in range(1, len(self.coeffs)):
            total += 2 * self.coeffs[k] * mp.cos(k * t)
        return total

    def sin_sum(self, t):
        """sum_{k>=1} V_k sin(kt)."""
        total = mpf(0)
        for k in range(1, len(self.coeffs)):
            total += self.coeffs[k] * mp.sin(k * t)
        return total

    def value_at_one(self):
        """V(1) = V_0 + 2 sum_k V_k."""
        if not self.coeffs:
            return mpf(0)
        return self.coeffs[0] + 2 * mp.fsum(self.coeffs[1:])

    def value_at_minus_one(self):
        """V(-1) = V_0 + 2 sum_k (-1)^k V_k."""
        if not self.coeffs:
            return mpf(0)
        total = self.coeffs[0]
        for k in range(1, len(self.coeffs)):
            total += 2 * self.coeffs[k] * (-1) ** k
        return total

    def weighted_energy(self):
        """sum_{k>=1} k V_k^2."""
        total = mpf(0)
        for k in range(1, len(self.coeffs)):
            total += k * self.coeffs[k] ** 2
        return total

    def reflected(self):
        """Coefficients of t -> V applied at the antipodal point, i.e. the
        potential with V_k replaced by (-1)^k V_k (angle map t -> pi - t)."""
        return LaurentPotential(
            tuple(((-1) ** k) * c for k, c in enumerate(self.coeffs))
        )

    def scaled(self, factor):
        f = _to_mpf(factor)
        return LaurentPotential(tuple(f * c for c in self.coeffs))


ZERO_POTENTIAL = LaurentPotential(())


@dataclass(frozen=True)
class FHSingularity:
    """One interior singularity at angle t in (0, pi): root exponent alpha >= 0
    and jump exponent beta = i * beta_im."""

    t: object
    alpha: object = 0
    beta_im: object = 0

    def __post_init__(self):
        t = _to_mpf(self.t)
        a = _to_mpf(self.alpha)
        b = _to_mpf(self.beta_im)
        if not (0 < t < mp.pi):
            raise SymbolError("singularity angle must lie strictly inside (0, pi)")
        if a < 0:
            raise SymbolError("alpha must be >= 0")
        if not mp.isfinite(b):
            raise SymbolError("beta_im must be finite")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta_im", b)


@dataclass(frozen=True)
class FHSymbol:
    """Even positive symbol with root factors at +-1 and paired root/jump
    factors at interior angles."""

    potential: LaurentPotential = ZERO_POTENTIAL
    alpha0: object = 0
    alpha_end: object = 0
    singularities: tuple = ()

    def __post_init__(self):
        a0 = _to_mpf(self.alpha0)
        ae = _to_mpf(self.alpha_end)
        if a0 < 0 or ae < 0:
            raise SymbolError("endpoint exponents must be >= 0")
        sings = tuple(self.singularities)
        for s in sings:
            if not isinstance(s, FHSingularity):
                raise SymbolError("singularities must be FHSingularity instances")
        for prev, cur in zip(sings, sings[1:]):
            if not (prev.t < cur.t):
                raise SymbolError("singularity angles must be strictly increasing")
        object.__setattr__(self, "alpha0", a0)
        object.__setattr__(self, "alpha_end", ae)
        object.__setattr__(self, "singularities", sings)

    @property
    def m(self):
        return len(self.singularities)


@dataclass(frozen=True)
class GapSymbol:
    """e^{V} on the closed arc |t| <= t0, damped by s in [0, 1] outside."""

    potential: LaurentPotential = ZERO_POTENTIAL
    t0: object = None
    s: object = 0

    def __post_init__(self):
        t0 = _to_mpf(self.t0)
        s = _to_mpf(self.s)
        if not (0 < t0 < mp.pi):
            raise SymbolError("t0 must lie strictly inside (0, pi)")
        if not (0 <= s <= 1):
            raise SymbolError("s must lie in [0, 1]")
        object.__setattr__(self, "t0", t0)
        object.__setattr__(self, "s", s)


@dataclass(frozen=True)
class EnsembleLabel:
    """One of the four ensemble components: j fixed eigenvalues (0, 1 or 2)
    and determinant sign.  Matrix size is N = 2n + j for n free eigenangles."""

    j: int
    sign: int

    _ADMISSIBLE = {(0, 1), (2, -1), (1, 1), (1, -1)}

    def __post_init__(self):
        if (self.j, self.sign) not in self._ADMISSIBLE:
            raise SymbolError(
                "admissible labels are (0,+), (2,-), (1,+), (1,-); got "
                f"({self.j},{self.sign:+d})"
            )

    def matrix_size(self, n):
        return 2 * n + self.j

    @property
    def fixed_eigenvalues(self):
        if self.j == 0:
            return ()
        if self.j == 2:
            return (1, -1)
        return (1,) if self.sign > 0 else (-1,)

    def reflected(self):
        """Label of the image ensemble under the angle map t -> pi - t.
        The even-size components map to themselves; the odd ones swap sign."""
        if self.j == 1:
            return EnsembleLabel(1, -self.sign)
        return self

    def __str__(self):
        return f"{self.j}{'+' if self.sign > 0 else '-'}"

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if len(text) != 2 or text[0] not in "012" or text[1] not in "+-":
            raise SymbolError(f"cannot parse ensemble label {text!r}")
        return cls(int(text[0]), 1 if text[1] == "+" else -1)


ALL_LABELS = (
    EnsembleLabel(0, 1),
    EnsembleLabel(2, -1),
    EnsembleLabel(1, 1),
    EnsembleLabel(1, -1),
)


def eval_g_fh(sym: FHSymbol, t):
    """Evaluate the Fisher-Hartwig style symbol at angle t.

    Exactly at an interior singularity the value is 0 when alpha > 0 there;
    a pure jump point (alpha = 0, beta_im != 0) has no well-defined value and
    raises.  Everywhere else the result is a positive real.
    """
    t = _to_mpf(t)
    log_total = sym.potential.eval_angle(t)
    tr = principal_angle(t)

    if sym.alpha0 > 0:
        # |e^{it} - 1| = 2 |sin(t/2)|
        r = 2 * abs(mp.sin(t / 2))
        if r == 0:
            return mpf(0)
        log_total += 2 * sym.alpha0 * mp.log(r)
    if sym.alpha_end > 0:
        r = 2 * abs(mp.cos(t / 2))
        if r == 0:
            return mpf(0)
        log_total += 2 * sym.alpha_end * mp.log(r)

    for sng in sym.singularities:
        at_sing = abs(tr) == sng.t
        if at_sing:
            if sng.alpha > 0:
                return mpf(0)
            raise SymbolError(
                "evaluation exactly at a jump discontinuity is undefined"
            )
        if sng.alpha > 0:
            # |e^{it} - e^{i t_j}| |e^{it} - e^{-i t_j}| = |2 cos t - 2 cos t_j|
            r = abs(2 * mp.cos(t) - 2 * mp.cos(sng.t))
            log_total += 2 * sng.alpha * mp.log(r)
        if sng.beta_im != 0:
            a1 = principal_angle(t - mp.pi - sng.t)
            a2 = principal_angle(-t - mp.pi - sng.t)
            log_total += -sng.beta_im * (a1 + a2)
    return mp.exp(log_total)


def eval_g_gap(sym: GapSymbol, t):
    """Evaluate the gap symbol at angle t: e^{V} on |t| <= t0, s e^{V} outside."""
    t = _to_mpf(t)
    base = mp.exp(sym.potential.eval_angle(t))
    if abs(principal_angle(t)) <= sym.t0:
        return base
    return sym.s * base


def fh_of_gap(sym: GapSymbol):
    """Jump-factor representation of a gap symbol with s > 0.

    Returns (scale, fh) with scale = s^(1 - t0/pi) and fh carrying a single
    pure-jump singularity at t0 with beta_im = log(s)/(2 pi), so that
    eval_g_gap(t) = scale * eval_g_fh(t) pointwise away from t0: the jump
    factor equals s^{t0/pi} outside the arc and s^{t0/pi - 1} inside.
    """
    if sym.s == 0:
        raise SymbolError("s = 0 admits no jump-factor representation")
    log_s = mp.log(sym.s)
    scale = mp.exp((1 - sym.t0 / mp.pi) * log_s)
    beta_im = log_s / (2 * mp.pi)
    fh = FHSymbol(
        potential=sym.potential,
        alpha0=0,
        alpha_end=0,
        singularities=(FHSingularity(t=sym.t0, alpha=0, beta_im=beta_im),),
    )
    return scale, fh


def eval_symbol(sym, t):
    """Dispatch on the symbol family."""
    if isinstance(sym, FHSymbol):
        return eval_g_fh(sym, t)
    if isinstance(sym, GapSymbol):
        return eval_g_gap(sym, t)
    raise SymbolError(f"unknown symbol type {type(sym).__name__}")


def singular_angles(sym):
    """Interior angles in (0, pi) where the symbol is non-analytic, with a flag
    marking algebraic (graded-quadrature) points as opposed to plain jumps."""
    if isinstance(sym, FHSymbol):
        return [(s.t, s.alpha > 0) for s in sym.singularities]
    if isinstance(sym, GapSymbol):
        if sym.s == 1:
            return []
        return [(sym.t0, False)]
    raise SymbolError(f"unknown symbol type {type(sym).__name__}")


def endpoint_grading(sym):
    """(grade_at_0, grade_at_pi) flags for quadrature panel grading."""
    if isinstance(sym, FHSymbol):
        return sym.alpha0 > 0, sym.alpha_end > 0
    return False, False


# ---------------------------------------------------------------------------
# JSON schema
# ---------------------------------------------------------------------------

def _num_out(x):
    # decimal string at full working precision; round-trips exactly on parse
    return mp.nstr(_to_mpf(x), int(mp.prec * 0.30103) + 12)


def symbol_to_json(sym):
    """Serialize a symbol to the interchange schema."""
    if isinstance(sym, FHSymbol):
        return {
            "type": "fisher_hartwig",
            "V": [_num_out(c) for c in sym.potential.coeffs],
            "alpha0": _num_out(sym.alpha0),
            "alpha_end": _num_out(sym.alpha_end),
            "singularities": [
                {
                    "t": _num_out(s.t),
                    "alpha": _num_out(s.alpha),
                    "beta_im": _num_out(s.beta_im),
                }
                for s in sym.singularities
            ],
        }
    if isinstance(sym, GapSymbol):
        return {
            "type": "gap",
            "V": [_num_out(c) for c in sym.potential.coeffs],
            "t0": _num_out(sym.t0),
            "s": _num_out(sym.s),
        }
    raise SymbolError(f"unknown symbol type {type(sym).__name__}")


def _num_in(x):
    if isinstance(x, str):
        try:
            return mpf(x)
        except ValueError:
            raise SymbolError(f"not a decimal number: {x!r}") from None
    if isinstance(x, (int, float)):
        if isinstance(x, float) and not math.isfinite(x):
            raise SymbolError("numbers in symbol JSON must be finite")
        return mpf(x)
    raise SymbolError(f"expected a number or decimal string, got {type(x).__name__}")


def symbol_from_json(data):
    """Parse a symbol from the interchange schema (dict, JSON text, or path)."""
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict) or "type" not in data:
        raise SymbolError("symbol JSON must be an object with a 'type' field")
    kind = data["type"]
    potential = LaurentPotential(tuple(_num_in(c) for c in data.get("V", [])))
    if kind == "fisher_hartwig":
        sings = tuple(
            FHSingularity(
                t=_num_in(s["t"]),
                alpha=_num_in(s.get("alpha", 0)),
                beta_im=_num_in(s.get("beta_im", 0)),
            )
            for s in data.get("singularities", [])
        )
        return FHSymbol(
            potential=potential,
            alpha0=_num_in(data.get("alpha0", 0)),
            alpha_end=_num_in(data.get("alpha_end", 0)),
            singularities=sings,
        )
    if kind == "gap":
        return GapSymbol(potential=potential, t0=_num_in(data["t0"]), s=_num_in(data.get("s", 0)))
    raise SymbolError(f"unknown symbol type {kind!r}")


def load_symbol(path, precision_bits=256):
    """Read a symbol JSON file, parsing numbers at the given precision."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    with mp.workprec(precision_bits):
        return symbol_from_json(text)
