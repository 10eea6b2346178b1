"""The graded ideal engine: slices, generators, powers, shifts, containment.

Ideals come in three presentations: saturated fat-point ideals (slices are
kernels of vanishing-condition matrices), explicit spans (slices are spans of
monomial multiples of the generators, with an optional M^j shift folded in),
and the irrelevant maximal ideal.  Containment A >= B is decided by reducing
B's generators against A's slices; a homogeneous ideal is contained in
another exactly when its generators are, so the certification degree is B's
generator ceiling (regularity for scheme ideals, the maximal generator degree
for spans).

Vanishing conditions are built characteristic-safely: in the affine chart of
the point's leading coordinate, the row for a local multi-index nu is the nu-th
Hasse derivative evaluated at the point, with integer binomials reduced into
the field.  Naive partial derivatives would lose conditions when char K <= m.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb

import numpy as np

from . import linalg
from .fields import Field
from .forms import Form, SliceBasis, mono_mul, monomial_basis, monomial_index
from .schemes import FatPointScheme


class IdealError(ValueError):
    pass


# ---------------------------------------------------------------------------
# monomial ranking (vectorized index of a degree-t exponent vector)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _exps_array(N: int, t: int) -> np.ndarray:
    return np.array(monomial_basis(N, t), dtype=np.int64)


@lru_cache(maxsize=None)
def _hockey_table(pos: int, t: int) -> np.ndarray:
    # C(d + pos, pos) for d = 0..t
    return np.array([comb(d + pos, pos) for d in range(t + 1)], dtype=np.int64)


def _mono_ranks(N: int, t: int, E: np.ndarray) -> np.ndarray:
    """Column indices of degree-t exponent rows in the fixed monomial order."""
    rank = np.zeros(E.shape[:-1], dtype=np.int64)
    rem = np.full(E.shape[:-1], t, dtype=np.int64)
    for pos in range(N, 0, -1):
        c = E[..., pos]
        table = _hockey_table(pos, t)
        rank += table[rem] - table[rem - c]
        rem = rem - c
    return rank


# ---------------------------------------------------------------------------
# vanishing conditions for fat points
# ---------------------------------------------------------------------------


def _local_indices(N: int, m: int) -> list[tuple[int, ...]]:
    """All nu in N^N with |nu| <= m-1, ascending degree then fixed order."""
    out: list[tuple[int, ...]] = []
    for d in range(m):
        if N == 1:
            out.append((d,))
        else:
            out.extend(monomial_basis(N - 1, d))
    return out


def conditions_matrix(scheme: FatPointScheme, t: int):
    """Linear conditions on degree-t coefficients for order-m_i vanishing.

    Returns an int64 ndarray over GF(p) or a list of Fraction rows over Q;
    sum_i C(m_i + N - 1, N) rows, one per (point, local multi-index).
    """
    if t < 0:
        raise IdealError("degree must be nonnegative")
    field = scheme.field
    if field.kind == "prime":
        return _conditions_prime(scheme, t)
    return _conditions_rational(scheme, t)


def _conditions_prime(scheme: FatPointScheme, t: int) -> np.ndarray:
    field = scheme.field
    p = field.p
    N = scheme.N
    E = _exps_array(N, t)
    ncols = E.shape[0]
    m_max = max(m for _, m in scheme.entries)
    # integer binomials reduced mod p: exact Hasse coefficients in char p
    B = np.zeros((t + 1, m_max), dtype=np.int64)
    for e in range(t + 1):
        for v in range(min(e, m_max - 1) + 1):
            B[e, v] = comb(e, v) % p
    nrows = scheme.degree()
    rows = np.zeros((nrows, ncols), dtype=np.int64)
    r = 0
    for pt, m in scheme.entries:
        coords = pt.coords
        chart = next(i for i, c in enumerate(coords) if c == 1)
        others = [k for k in range(N + 1) if k != chart]
        qpow = {}
        for k in others:
            pw = np.ones(t + 1, dtype=np.int64)
            for e in range(1, t + 1):
                pw[e] = pw[e - 1] * coords[k] % p
            qpow[k] = pw
        for nu in _local_indices(N, m):
            row = np.ones(ncols, dtype=np.int64)
            for k, v in zip(others, nu):
                lam = E[:, k]
                factor = B[lam, v] * qpow[k][np.maximum(lam - v, 0)] % p
                row = row * factor % p
            rows[r] = row
            r += 1
    return rows


def _conditions_rational(scheme: FatPointScheme, t: int) -> list[list]:
    field = scheme.field
    N = scheme.N
    basis = monomial_basis(N, t)
    rows = []
    for pt, m in scheme.entries:
        coords = pt.coords
        chart = next(i for i, c in enumerate(coords) if c == field.one)
        others = [k for k in range(N + 1) if k != chart]
        for nu in _local_indices(N, m):
            row = []
            for mono in basis:
                val = field.one
                for k, v in zip(others, nu):
                    e = mono[k]
                    if e < v:
                        val = field.zero
                        break
                    val = field.mul(val, field.from_int(comb(e, v)))
                    val = field.mul(val, coords[k] ** (e - v))
                row.append(val)
            rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# ideal handles
# ---------------------------------------------------------------------------


class IdealHandle:
    """Common surface: cached degree slices of a graded ideal."""

    field: Field
    N: int

    def __init__(self):
        self._slices: dict[int, SliceBasis] = {}

    def slice(self, t: int) -> SliceBasis:
        if t < 0:
            raise IdealError("degree must be nonnegative")
        cached = self._slices.get(t)
        if cached is None:
            cached = self._compute_slice(t)
            # first-writer-wins: recomputation yields the identical canonical basis
            self._slices.setdefault(t, cached)
        return cached

    def slice_dim(self, t: int) -> int:
        return self.slice(t).dim

    def alpha_ceiling(self) -> int:
        raise NotImplementedError

    def alpha(self) -> int:
        """Least degree with a nonzero slice, by ascending scan."""
        t = 1
        ceiling = self.alpha_ceiling()
        while t <= ceiling:
            if self.slice_dim(t) > 0:
                return t
            t += 1
        raise IdealError("zero ideal: no nonzero slice up to the counting ceiling")

    def key(self) -> str:
        raise NotImplementedError

    def _compute_slice(self, t: int) -> SliceBasis:
        raise NotImplementedError


class SchemeIdeal(IdealHandle):
    """Saturated ideal of a fat point scheme."""

    def __init__(self, scheme: FatPointScheme):
        super().__init__()
        self.scheme = scheme
        self.field = scheme.field
        self.N = scheme.N
        self._regularity: int | None = None
        self._generators: list[Form] | None = None

    def key(self) -> str:
        return "scheme|" + self.scheme.content_key()

    def _compute_slice(self, t: int) -> SliceBasis:
        rows = conditions_matrix(self.scheme, t)
        ncols = len(monomial_basis(self.N, t))
        ker = linalg.kernel(rows, self.field, ncols)
        return SliceBasis(self.N, t, ker)

    def alpha_ceiling(self) -> int:
        # first t where the naive count guarantees a nonzero kernel
        d = self.scheme.degree()
        t = 1
        while comb(t + self.N, self.N) - d <= 0:
            t += 1
        return t

    def hilbert_function(self, t: int) -> int:
        return comb(t + self.N, self.N) - self.slice_dim(t)

    def regularity(self) -> int:
        """1 + the first degree where the scheme imposes deg(Z) conditions."""
        if self._regularity is None:
            d = self.scheme.degree()
            t = 0
            while self.hilbert_function(t) != d:
                t += 1
                if t > d + self.N + 1:
                    raise IdealError("Hilbert function failed to stabilize")
            self._regularity = t + 1
        return self._regularity

    def minimal_generators(self) -> list[Form]:
        """Canonical minimal generating forms, degrees alpha..regularity."""
        if self._generators is None:
            gens: list[Form] = []
            reg = self.regularity()
            a = self.alpha()
            for t in range(a, reg + 1):
                cur = self.slice(t)
                if cur.dim == 0:
                    continue
                prev = self.slice(t - 1)
                mi_rows = _multiply_basis_rows(prev, 1, self.field)
                mi = linalg.rref(mi_rows, self.field, len(monomial_basis(self.N, t)))
                if self.field.kind == "prime":
                    resid = mi.reduce(cur.basis.data)
                else:
                    resid = mi.reduce(cur.basis.rows())
                new = linalg.rref(resid, self.field, mi.ncols)
                for row in new.rows():
                    gens.append(Form.from_coeff_vector(self.field, self.N, t, row))
            self._generators = gens
        return self._generators

    def minimal_generator_degrees(self) -> tuple[int, ...]:
        return tuple(sorted(g.degree for g in self.minimal_generators()))

    def generator_ceiling(self) -> tuple[int, str]:
        return (
            self.regularity(),
            "regularity of the saturated scheme ideal bounds its minimal generator degrees",
        )

    def target_generators(self) -> list[Form]:
        return self.minimal_generators()

    def __repr__(self):
        return f"SchemeIdeal({self.scheme.scheme_id()})"


def _multiply_basis_rows(slice_basis: SliceBasis, j: int, field: Field):
    """Rows spanning (M^j * V)_t+j from a slice V: all degree-j monomial multiples."""
    N = slice_basis.N
    t = slice_basis.degree + j
    mus = monomial_basis(N, j)
    if field.kind == "prime":
        E_src = _exps_array(N, slice_basis.degree)
        data = slice_basis.basis.data
        if data.shape[0] == 0:
            return np.zeros((0, len(monomial_basis(N, t))), dtype=np.int64)
        blocks = []
        for mu in mus:
            target = _mono_ranks(N, t, E_src + np.array(mu, dtype=np.int64))
            block = np.zeros((data.shape[0], len(monomial_basis(N, t))), dtype=np.int64)
            block[:, target] = data
            blocks.append(block)
        return np.vstack(blocks)
    rows = []
    for f in slice_basis.forms():
        for mu in mus:
            rows.append(f.mul_monomial(mu).coeff_vector())
    return rows


class SpanIdeal(IdealHandle):
    """M^shift * (ideal generated by explicit forms)."""

    def __init__(self, generators: list[Form], shift: int = 0):
        super().__init__()
        gens = [g for g in generators]
        if not gens:
            raise IdealError("span ideal needs at least one generator")
        if any(g.is_zero() for g in gens):
            raise IdealError("zero generator in span presentation")
        f0 = gens[0]
        if any(g.field != f0.field or g.nvars != f0.nvars for g in gens):
            raise IdealError("generators live in different rings")
        if shift < 0:
            raise IdealError("shift must be nonnegative")
        self.generators = gens
        self.shift = shift
        self.field = f0.field
        self.N = f0.nvars - 1
        self._key: str | None = None

    def key(self) -> str:
        if self._key is None:
            gen_part = "&".join(sorted(g.to_string() for g in self.generators))
            fld = self.field.config()
            fld_s = f"prime:{fld['p']}" if fld["kind"] == "prime" else "rationals"
            self._key = f"span|{fld_s}|N={self.N}|shift={self.shift}|{gen_part}"
        return self._key

    def _compute_slice(self, t: int) -> SliceBasis:
        N = self.N
        ncols = len(monomial_basis(N, t))
        if self.field.kind == "prime":
            blocks = []
            for g in self.generators:
                cof = t - g.degree
                if cof < self.shift:
                    continue
                terms = list(g.coeffs.items())
                Eg = np.array([m for m, _ in terms], dtype=np.int64)
                vg = np.array([c for _, c in terms], dtype=np.int64)
                Em = _exps_array(N, cof)
                targets = _mono_ranks(N, t, Em[:, None, :] + Eg[None, :, :])
                block = np.zeros((Em.shape[0], ncols), dtype=np.int64)
                block[np.arange(Em.shape[0])[:, None], targets] = vg[None, :]
                blocks.append(block)
            rows = np.vstack(blocks) if blocks else np.zeros((0, ncols), dtype=np.int64)
            return SliceBasis(N, t, linalg.rref(rows, self.field, ncols))
        rows = []
        for g in self.generators:
            cof = t - g.degree
            if cof < self.shift:
                continue
            for mu in monomial_basis(N, cof):
                rows.append(g.mul_monomial(mu).coeff_vector())
        return SliceBasis(N, t, linalg.rref(rows, self.field, ncols))

    def alpha_ceiling(self) -> int:
        return min(g.degree for g in self.generators) + self.shift

    def target_generators(self) -> list[Form]:
        """Generators of the presented ideal (shift expanded into monomials)."""
        if self.shift == 0:
            return list(self.generators)
        out = []
        for g in self.generators:
            for mu in monomial_basis(self.N, self.shift):
                out.append(g.mul_monomial(mu))
        return out

    def generator_ceiling(self) -> tuple[int, str]:
        return (
            max(g.degree for g in self.generators) + self.shift,
            "maximal generator degree of the span presentation",
        )

    def __repr__(self):
        return f"SpanIdeal({len(self.generators)} gens, shift={self.shift})"


class PowerIdeal(SpanIdeal):
    """I^r presented by r-fold generator products.

    The presentation (generator ceiling, containment targets) uses the
    explicit products; slices are evaluated recursively through
    (I^r)_t = sum_g g * (I^{r-1})_{t - deg g}, which keeps row counts at
    #gens * dim instead of the combinatorial monomial-multiple count.
    """

    def __init__(self, base_gens: list[Form], r: int):
        products = []
        for combo in combinations_with_replacement(range(len(base_gens)), r):
            f = base_gens[combo[0]]
            for i in combo[1:]:
                f = f.mul(base_gens[i])
            products.append(f)
        super().__init__(products, 0)
        self.base_gens = base_gens
        self.r = r
        self._prev = PowerIdeal(base_gens, r - 1) if r > 1 else None

    def _compute_slice(self, t: int) -> SliceBasis:
        if self._prev is None:
            return super()._compute_slice(t)
        N = self.N
        ncols = len(monomial_basis(N, t))
        if self.field.kind == "prime":
            p = self.field.p
            blocks = []
            for g in self.base_gens:
                s = t - g.degree
                if s < 0:
                    continue
                prev = self._prev.slice(s)
                if prev.dim == 0:
                    continue
                E_src = _exps_array(N, s)
                data = prev.basis.data
                block = np.zeros((data.shape[0], ncols), dtype=np.int64)
                for mono, c in g.coeffs.items():
                    targets = _mono_ranks(N, t, E_src + np.array(mono, dtype=np.int64))
                    block[:, targets] += c * data % p
                blocks.append(block % p)
            rows = np.vstack(blocks) if blocks else np.zeros((0, ncols), dtype=np.int64)
            return SliceBasis(N, t, linalg.rref(rows, self.field, ncols))
        rows = []
        for g in self.base_gens:
            s = t - g.degree
            if s < 0:
                continue
            prev = self._prev.slice(s)
            for f in prev.forms():
                rows.append(g.mul(f).coeff_vector())
        return SliceBasis(N, t, linalg.rref(rows, self.field, ncols))


class MaximalIdeal(IdealHandle):
    """M = (x0, ..., xN)."""

    def __init__(self, field: Field, N: int):
        super().__init__()
        self.field = field
        self.N = N

    def key(self) -> str:
        fld = self.field.config()
        fld_s = f"prime:{fld['p']}" if fld["kind"] == "prime" else "rationals"
        return f"maximal|{fld_s}|N={self.N}"

    def _compute_slice(self, t: int) -> SliceBasis:
        ncols = len(monomial_basis(self.N, t))
        if t == 0:
            return SliceBasis(self.N, 0, linalg.rref([], self.field, ncols))
        if self.field.kind == "prime":
            data = np.eye(ncols, dtype=np.int64)
            basis = linalg.EchelonBasis(self.field, ncols, tuple(range(ncols)), data)
        else:
            one, zero = self.field.one, self.field.zero
            data = tuple(
                tuple(one if i == j else zero for j in range(ncols)) for i in range(ncols)
            )
            basis = linalg.EchelonBasis(self.field, ncols, tuple(range(ncols)), data)
        return SliceBasis(self.N, t, basis)

    def alpha_ceiling(self) -> int:
        return 1

    def target_generators(self) -> list[Form]:
        return [Form.variable(self.field, self.N + 1, i) for i in range(self.N + 1)]

    def generator_ceiling(self) -> tuple[int, str]:
        return (1, "the maximal ideal is generated by the variables")

    def __repr__(self):
        return f"MaximalIdeal(N={self.N})"


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def _base_generators(I: IdealHandle) -> tuple[list[Form], int]:
    """(generators, shift) of the presented ideal."""
    if isinstance(I, SchemeIdeal):
        return I.minimal_generators(), 0
    if isinstance(I, SpanIdeal):
        return I.generators, I.shift
    if isinstance(I, MaximalIdeal):
        return I.target_generators(), 0
    raise IdealError(f"unsupported presentation {type(I).__name__}")


def power(I: IdealHandle, r: int) -> SpanIdeal:
    """Ordinary power, generated by all r-fold products of I's generators."""
    if r < 1:
        raise IdealError("power exponent must be >= 1")
    gens, shift = _base_generators(I)
    if shift == 0:
        return PowerIdeal(gens, r)
    out = []
    for combo in combinations_with_replacement(range(len(gens)), r):
        f = gens[combo[0]]
        for i in combo[1:]:
            f = f.mul(gens[i])
        out.append(f)
    return SpanIdeal(out, shift * r)


def product(A: IdealHandle, B: IdealHandle) -> SpanIdeal:
    """The product ideal A*B via pairwise generator products."""
    gens_a, sh_a = _base_generators(A)
    gens_b, sh_b = _base_generators(B)
    out = [f.mul(g) for f in gens_a for g in gens_b]
    return SpanIdeal(out, sh_a + sh_b)


def shift_by_M(I: IdealHandle, j: int) -> IdealHandle:
    """M^j * I; slices satisfy (M^j I)_t = (degree-j monomials) * I_{t-j}."""
    if j < 0:
        raise IdealError("shift must be nonnegative")
    if j == 0:
        return I
    gens, shift = _base_generators(I)
    return SpanIdeal(gens, shift + j)


# ---------------------------------------------------------------------------
# containment
# ---------------------------------------------------------------------------


@dataclass
class ContainmentReport:
    holds: bool
    checked_degrees: tuple[int, int]
    witness_degree: int | None
    witness: Form | None
    certificate: dict
    evidence: list

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "checked_degrees": list(self.checked_degrees),
            "witness_degree": self.witness_degree,
            "witness": self.witness.to_string() if self.witness is not None else None,
            "certificate": self.certificate,
            "evidence": self.evidence,
        }


def contains(A: IdealHandle, B: IdealHandle) -> ContainmentReport:
    """Decide B subseteq A degree by degree, with certified termination.

    B is contained in A iff every generator of B is; generators of a scheme
    ideal live in degrees up to its regularity, generators of a span at its
    presentation degrees, so checking those degrees certifies all of them.
    """
    if A.field != B.field:
        raise IdealError("containment requires a common ground field")
    if A.N != B.N:
        raise IdealError("containment requires a common ambient space")
    bound, justification = B.generator_ceiling()
    gens = B.target_generators()
    by_degree: dict[int, list[Form]] = {}
    for g in gens:
        by_degree.setdefault(g.degree, []).append(g)
    evidence = []
    witness = None
    witness_degree = None
    for t in sorted(by_degree):
        degree_gens = by_degree[t]
        a_slice = A.slice(t)
        vectors = [g.coeff_vector() for g in degree_gens]
        resid = a_slice.basis.reduce(vectors)
        bad = None
        if A.field.kind == "prime":
            nz = np.nonzero(resid.any(axis=1))[0]
            if nz.size:
                bad = int(nz[0])
        else:
            for i, row in enumerate(resid):
                if any(x != 0 for x in row):
                    bad = i
                    break
        evidence.append(
            {
                "degree": t,
                "container_dim": a_slice.dim,
                "generators_checked": len(degree_gens),
                "contained": bad is None,
            }
        )
        if bad is not None:
            witness = degree_gens[bad]
            witness_degree = t
            break
    certificate = {
        "bound": bound,
        "justification": justification,
        "checked_at_degrees": sorted(by_degree),
    }
    return ContainmentReport(
        holds=witness is None,
        checked_degrees=(0, bound),
        witness_degree=witness_degree,
        witness=witness,
        certificate=certificate,
        evidence=evidence,
    )


def verify_containment_witness(A: IdealHandle, B: IdealHandle, report: ContainmentReport) -> bool:
    """Recheck a failure witness: it must lie in B's slice and not in A's."""
    if report.holds or report.witness is None:
        return False
    t = report.witness_degree
    vec = report.witness.coeff_vector()
    return B.slice(t).basis.contains_vector(vec) and not A.slice(t).basis.contains_vector(vec)


class IdealContext:
    """Shared handle cache so repeated suites reuse computed slices."""

    def __init__(self):
        self._schemes: dict[tuple, SchemeIdeal] = {}
        self._derived: dict[tuple, IdealHandle] = {}

    def ideal(self, scheme: FatPointScheme) -> SchemeIdeal:
        key = (scheme.content_key(),)
        handle = self._schemes.get(key)
        if handle is None:
            handle = SchemeIdeal(scheme)
            self._schemes[key] = handle
        return handle

    def symbolic(self, scheme: FatPointScheme, m: int) -> SchemeIdeal:
        return self.ideal(scheme.scale(m))

    def power_of(self, scheme: FatPointScheme, r: int) -> SpanIdeal:
        key = ("power", scheme.content_key(), r)
        handle = self._derived.get(key)
        if handle is None:
            handle = power(self.ideal(scheme), r)
            self._derived[key] = handle
        return handle

    def shifted_power(self, scheme: FatPointScheme, r: int, j: int) -> IdealHandle:
        key = ("shift-power", scheme.content_key(), r, j)
        handle = self._derived.get(key)
        if handle is None:
            handle = shift_by_M(self.power_of(scheme, r), j)
            self._derived[key] = handle
        return handle
