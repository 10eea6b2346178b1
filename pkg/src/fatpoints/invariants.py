"""Numerical invariants of fat-point ideals.

alpha: least degree of a nonzero form in the ideal (ascending scan with a
counting-bound stop).  beta (plane only): least degree whose slice contains
two forms with no common factor, certified by an explicit coprime pair.
Hilbert function and regularity of the scheme; exact rational brackets for
the asymptotic degree-growth constant of symbolic powers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .fields import SeedStream, stable_seed
from .forms import Form, divide_form, fixed_divisor, gcd_forms
from .ideals import IdealContext, IdealError, IdealHandle, SchemeIdeal
from .schemes import FatPointScheme


class BetaCertificationError(RuntimeError):
    """A coprime pair could not be certified within the retry budget."""


def alpha(I: IdealHandle) -> int:
    """Least t with a nonzero degree-t slice."""
    return I.alpha()


def _random_combination(slice_basis, field, stream: SeedStream) -> Form:
    dim = slice_basis.dim
    if field.kind == "prime":
        coeffs = np.array([stream.below(field.p) for _ in range(dim)], dtype=np.int64)
        from .linalg import matmul_modp

        vec = matmul_modp(coeffs.reshape(1, -1), slice_basis.basis.data, field.p)[0]
        return Form.from_coeff_vector(field, slice_basis.N, slice_basis.degree, [int(v) for v in vec])
    rows = slice_basis.basis.rows()
    coeffs = [field.from_int(stream.below(2**31)) for _ in range(dim)]
    vec = [field.zero] * slice_basis.basis.ncols
    for c, row in zip(coeffs, rows):
        for i, x in enumerate(row):
            vec[i] = field.add(vec[i], field.mul(c, x))
    return Form.from_coeff_vector(field, slice_basis.N, slice_basis.degree, vec)


def beta(I: SchemeIdeal, retries: int = 64) -> int:
    """Least t such that the degree-t slice contains a certified coprime pair.

    Scans ascending from alpha.  A degree qualifies when its slice has
    dimension >= 2 and no fixed component; the certificate is an explicit
    pair of random combinations with constant gcd.  Degrees with a nonzero
    fixed divisor are skipped; certification failure in a fixed-component-free
    slice is reported, never guessed.
    """
    if not isinstance(I, SchemeIdeal):
        raise IdealError("beta is computed for saturated fat-point ideals")
    if I.N != 2:
        raise IdealError("beta is defined here for the plane only")
    stream = SeedStream(stable_seed("beta-certification", I.key()))
    reg = I.regularity()
    for t in range(I.alpha(), reg + 1):
        S = I.slice(t)
        if S.dim < 2:
            continue
        forms = None
        skip_degree = False
        for _ in range(retries):
            f1 = _random_combination(S, I.field, stream)
            f2 = _random_combination(S, I.field, stream)
            if f1.is_zero() or f2.is_zero():
                continue
            g = gcd_forms(f1, f2)
            if g.degree == 0:
                return t
            if forms is None:
                forms = S.forms()
            if all(divide_form(h, g) is not None for h in forms):
                # g divides the whole slice: it is the fixed divisor
                skip_degree = True
                break
        if skip_degree:
            continue
        if fixed_divisor(S).degree > 0:
            continue
        raise BetaCertificationError(
            f"no coprime pair certified in degree {t} after {retries} attempts"
        )
    raise BetaCertificationError("no coprime pair found up to the regularity ceiling")


def hilbert_function(Z: FatPointScheme, t: int, ctx: IdealContext | None = None) -> int:
    """dim of the degree-t piece of the coordinate ring of Z."""
    ctx = ctx or IdealContext()
    return ctx.ideal(Z).hilbert_function(t)


def regularity(Z: FatPointScheme, ctx: IdealContext | None = None) -> int:
    ctx = ctx or IdealContext()
    return ctx.ideal(Z).regularity()


def minimal_generator_degrees(I: SchemeIdeal) -> tuple[int, ...]:
    return I.minimal_generator_degrees()


@dataclass
class GammaBracket:
    """Exact rational two-sided bracket for lim alpha(I^(m))/m."""

    lower: Fraction
    upper: Fraction
    m_lower: list[int]
    m_upper: list[int]
    alphas: dict[int, int]

    def to_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "m_lower": list(self.m_lower),
            "m_upper": list(self.m_upper),
            "alphas": {str(m): a for m, a in sorted(self.alphas.items())},
        }


def gamma_bracket(Z: FatPointScheme, m_max: int, ctx: IdealContext | None = None) -> GammaBracket:
    """Bracket from alpha(I^(m)), m = 1..m_max: upper = min alpha_m/m,
    lower = max alpha_m/(m+N-1)."""
    if m_max < 1:
        raise IdealError("m_max must be >= 1")
    ctx = ctx or IdealContext()
    N = Z.N
    alphas = {m: ctx.symbolic(Z, m).alpha() for m in range(1, m_max + 1)}
    upper = min(Fraction(a, m) for m, a in alphas.items())
    lower = max(Fraction(a, m + N - 1) for m, a in alphas.items())
    m_upper = [m for m, a in alphas.items() if Fraction(a, m) == upper]
    m_lower = [m for m, a in alphas.items() if Fraction(a, m + N - 1) == lower]
    return GammaBracket(lower=lower, upper=upper, m_lower=m_lower, m_upper=m_upper, alphas=alphas)
