"""Homogeneous forms in N+1 variables, monomial bases, products, gcd.

The monomial order is graded reverse-lexicographic with x0 > x1 > ... > xN,
fixed once and used for matrix columns, pivots and serialization.  gcd is
implemented for the plane only (N = 2), by dehomogenizing on a variable not
dividing the gcd and running a content/primitive-part Euclidean algorithm in
one variable over the other.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from . import linalg
from .fields import Field

Monomial = tuple[int, ...]


class FormError(ValueError):
    pass


@lru_cache(maxsize=None)
def monomial_basis(N: int, t: int) -> tuple[Monomial, ...]:
    """All degree-t monomials in N+1 variables, descending grevlex order."""
    if N < 1 or t < 0:
        raise FormError("need N >= 1 and t >= 0")
    monos: list[Monomial] = []

    def fill(prefix: list[int], remaining: int, pos: int):
        if pos == N:
            monos.append(tuple(prefix + [remaining]))
            return
        for e in range(remaining, -1, -1):
            fill(prefix + [e], remaining - e, pos + 1)

    fill([], t, 0)
    # descending grevlex == ascending lex on reversed exponent vectors
    monos.sort(key=lambda m: m[::-1])
    return tuple(monos)


@lru_cache(maxsize=None)
def monomial_index(N: int, t: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomial_basis(N, t))}


def monomial_key(m: Monomial) -> tuple[int, ...]:
    """Sort key: ascending key order == descending grevlex."""
    return m[::-1]


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


class Form:
    """A homogeneous polynomial: immutable term map over one field."""

    __slots__ = ("field", "nvars", "degree", "coeffs")

    def __init__(self, field: Field, nvars: int, degree: int, coeffs: dict):
        clean = {}
        for mono, c in coeffs.items():
            if len(mono) != nvars or any(e < 0 for e in mono):
                raise FormError(f"bad monomial {mono}")
            if sum(mono) != degree:
                raise FormError(f"monomial {mono} is not of degree {degree}")
            if not field.is_zero(c):
                clean[mono] = c
        self.field = field
        self.nvars = nvars
        self.degree = degree
        self.coeffs = clean

    # -- constructors -------------------------------------------------
    @staticmethod
    def monomial(field: Field, nvars: int, mono: Monomial, coeff=None):
        c = field.one if coeff is None else coeff
        return Form(field, nvars, sum(mono), {tuple(mono): c})

    @staticmethod
    def variable(field: Field, nvars: int, i: int):
        mono = tuple(1 if j == i else 0 for j in range(nvars))
        return Form(field, nvars, 1, {mono: field.one})

    @staticmethod
    def from_coeff_vector(field: Field, N: int, t: int, vec):
        basis = monomial_basis(N, t)
        if len(vec) != len(basis):
            raise FormError("coefficient vector has wrong length")
        return Form(field, N + 1, t, {m: v for m, v in zip(basis, vec) if not field.is_zero(v)})

    def coeff_vector(self) -> list:
        basis = monomial_basis(self.nvars - 1, self.degree)
        zero = self.field.zero
        return [self.coeffs.get(m, zero) for m in basis]

    # -- predicates / access ------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def sorted_terms(self) -> list[tuple[Monomial, object]]:
        return sorted(self.coeffs.items(), key=lambda kv: monomial_key(kv[0]))

    def leading(self) -> tuple[Monomial, object]:
        if not self.coeffs:
            raise FormError("zero form has no leading term")
        mono = min(self.coeffs, key=monomial_key)
        return mono, self.coeffs[mono]

    # -- arithmetic ----------------------------------------------------
    def add(self, other: "Form") -> "Form":
        self._check_compatible(other)
        if self.degree != other.degree:
            raise FormError("cannot add forms of different degrees")
        f = self.field
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = f.add(out.get(m, f.zero), c)
        return Form(f, self.nvars, self.degree, out)

    def scale(self, c) -> "Form":
        f = self.field
        if f.is_zero(c):
            return Form(f, self.nvars, self.degree, {})
        return Form(f, self.nvars, self.degree, {m: f.mul(v, c) for m, v in self.coeffs.items()})

    def mul(self, other: "Form") -> "Form":
        self._check_compatible(other)
        f = self.field
        out: dict[Monomial, object] = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = mono_mul(m1, m2)
                prod = f.mul(c1, c2)
                acc = out.get(m)
                out[m] = prod if acc is None else f.add(acc, prod)
        return Form(f, self.nvars, self.degree + other.degree, out)

    def mul_monomial(self, mono: Monomial) -> "Form":
        return Form(
            self.field,
            self.nvars,
            self.degree + sum(mono),
            {mono_mul(m, mono): c for m, c in self.coeffs.items()},
        )

    def monic(self) -> "Form":
        """Normalize so the leading (grevlex) coefficient is 1."""
        if self.is_zero():
            return self
        _, c = self.leading()
        return self.scale(self.field.inv(c))

    def evaluate(self, coords) -> object:
        f = self.field
        total = f.zero
        for m, c in self.coeffs.items():
            v = c
            for x, e in zip(coords, m):
                for _ in range(e):
                    v = f.mul(v, x)
            total = f.add(total, v)
        return total

    def _check_compatible(self, other: "Form"):
        if self.field != other.field or self.nvars != other.nvars:
            raise FormError("forms live in different rings")

    # -- serialization --------------------------------------------------
    def to_string(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            vars_part = " ".join(
                f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(mono) if e > 0
            )
            coeff = self.field.format(c)
            parts.append(f"{coeff}*{vars_part}" if vars_part else coeff)
        return " + ".join(parts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return (
            self.field == other.field
            and self.nvars == other.nvars
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.nvars, self.degree, tuple(sorted(self.coeffs.items(), key=lambda kv: kv[0]))))

    def __repr__(self) -> str:
        return f"Form({self.to_string()})"


def form_product(f: Form, g: Form) -> Form:
    return f.mul(g)


def divide_form(f: Form, g: Form) -> Form | None:
    """Exact quotient f/g, or None when g does not divide f."""
    if g.is_zero():
        raise FormError("division by zero form")
    if f.is_zero():
        return Form(f.field, f.nvars, max(f.degree - g.degree, 0), {})
    if f.degree < g.degree:
        return None
    fld = f.field
    g_mono, g_coeff = g.leading()
    g_inv = fld.inv(g_coeff)
    quotient: dict[Monomial, object] = {}
    rem = f
    while not rem.is_zero():
        m, c = rem.leading()
        diff = tuple(a - b for a, b in zip(m, g_mono))
        if any(e < 0 for e in diff):
            return None
        q = fld.mul(c, g_inv)
        quotient[diff] = q
        rem = rem.add(g.mul_monomial(diff).scale(fld.neg(q)))
    return Form(fld, f.nvars, f.degree - g.degree, quotient)


class SliceBasis:
    """The degree-t piece of a graded ideal, as a canonical echelon basis."""

    __slots__ = ("N", "degree", "basis")

    def __init__(self, N: int, degree: int, basis: linalg.EchelonBasis):
        expected = len(monomial_basis(N, degree))
        if basis.ncols != expected:
            raise FormError("basis width does not match the monomial basis")
        self.N = N
        self.degree = degree
        self.basis = basis

    @property
    def field(self) -> Field:
        return self.basis.field

    @property
    def dim(self) -> int:
        return self.basis.dim

    @property
    def monomials(self) -> tuple[Monomial, ...]:
        return monomial_basis(self.N, self.degree)

    def forms(self) -> list[Form]:
        return [
            Form.from_coeff_vector(self.field, self.N, self.degree, row)
            for row in self.basis.rows()
        ]

    def contains_form(self, f: Form) -> bool:
        if f.degree != self.degree:
            return False
        return self.basis.contains_vector(f.coeff_vector())

    def __repr__(self) -> str:
        return f"SliceBasis(N={self.N}, t={self.degree}, dim={self.dim})"


def rref_slice(N: int, degree: int, rows, field: Field) -> SliceBasis:
    """Reduced row-echelon slice basis from raw coefficient rows."""
    ncols = len(monomial_basis(N, degree))
    return SliceBasis(N, degree, linalg.rref(rows, field, ncols))


# ---------------------------------------------------------------------------
# univariate / bivariate helpers for the plane gcd (dense coefficient lists)
# ---------------------------------------------------------------------------


class _UPoly:
    """Stateless helpers for dense univariate polynomials over a field."""

    @staticmethod
    def trim(field, u):
        while u and field.is_zero(u[-1]):
            u.pop()
        return u

    @staticmethod
    def add(field, a, b):
        n = max(len(a), len(b))
        out = []
        for i in range(n):
            x = a[i] if i < len(a) else field.zero
            y = b[i] if i < len(b) else field.zero
            out.append(field.add(x, y))
        return _UPoly.trim(field, out)

    @staticmethod
    def scale(field, a, c):
        if field.is_zero(c):
            return []
        return [field.mul(x, c) for x in a]

    @staticmethod
    def mul(field, a, b):
        if not a or not b:
            return []
        out = [field.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if field.is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = field.add(out[i + j], field.mul(x, y))
        return _UPoly.trim(field, out)

    @staticmethod
    def divmod(field, a, b):
        if not b:
            raise ZeroDivisionError("univariate division by zero")
        a = list(a)
        q = [field.zero] * max(len(a) - len(b) + 1, 0)
        inv = field.inv(b[-1])
        while len(a) >= len(b) and a:
            c = field.mul(a[-1], inv)
            k = len(a) - len(b)
            q[k] = c
            for i, y in enumerate(b):
                a[k + i] = field.sub(a[k + i], field.mul(c, y))
            _UPoly.trim(field, a)
        return _UPoly.trim(field, q), a

    @staticmethod
    def gcd(field, a, b):
        a, b = list(a), list(b)
        while b:
            _, r = _UPoly.divmod(field, a, b)
            a, b = b, r
        if a:
            inv = field.inv(a[-1])
            a = [field.mul(x, inv) for x in a]
        return a


def _bipoly_content(field, f: list[list]) -> list:
    """gcd of the u-coefficients of f (f is a list over v-degree of u-polys)."""
    g: list = []
    for coeff in f:
        if coeff:
            g = _UPoly.gcd(field, g, coeff) if g else [field.mul(x, field.inv(coeff[-1])) for x in coeff]
            if len(g) == 1:
                return g
    return g


def _bipoly_pp(field, f: list[list]) -> list[list]:
    cont = _bipoly_content(field, f)
    if not cont or len(cont) == 1:
        return [list(c) for c in f]
    out = []
    for coeff in f:
        if not coeff:
            out.append([])
            continue
        q, r = _UPoly.divmod(field, coeff, cont)
        if r:
            raise FormError("content division left a remainder")
        out.append(q)
    return out


def _bipoly_trim(f: list[list]) -> list[list]:
    while f and not f[-1]:
        f.pop()
    return f


def _bipoly_prem(field, a: list[list], b: list[list]) -> list[list]:
    """Pseudo-remainder of a by b with respect to the v variable."""
    a = [list(c) for c in a]
    db = len(b) - 1
    lcb = b[-1]
    while len(a) - 1 >= db and a:
        lca = a[-1]
        k = len(a) - 1 - db
        # a := lcb*a - lca*v^k*b
        new = [_UPoly.mul(field, c, lcb) for c in a]
        for i, c in enumerate(b):
            term = _UPoly.mul(field, c, lca)
            idx = i + k
            new[idx] = _UPoly.add(field, new[idx], _UPoly.scale(field, term, field.neg(field.one)))
        a = _bipoly_trim(new)
    return a


def _bipoly_gcd(field, f: list[list], g: list[list]) -> list[list]:
    """gcd in K[u][v] by content / primitive-part Euclidean remainders."""
    f = _bipoly_trim([list(c) for c in f])
    g = _bipoly_trim([list(c) for c in g])
    if not f:
        return g
    if not g:
        return f
    cont = _UPoly.gcd(field, _bipoly_content(field, f), _bipoly_content(field, g))
    a, b = _bipoly_pp(field, f), _bipoly_pp(field, g)
    if len(a) < len(b):
        a, b = b, a
    while True:
        if len(b) == 1:
            pp = [[field.one]]  # v-degree 0 and primitive: a unit in K(u)[v]
            break
        r = _bipoly_trim(_bipoly_prem(field, a, b))
        if not r:
            pp = b
            break
        a, b = b, _bipoly_pp(field, r)
    out = [_UPoly.mul(field, c, cont) for c in pp]
    return _bipoly_trim(out)


def _var_valuation(f: Form, i: int) -> int:
    return min(m[i] for m in f.coeffs)


def _shift_down(f: Form, shifts: tuple[int, ...]) -> Form:
    coeffs = {tuple(e - s for e, s in zip(m, shifts)): c for m, c in f.coeffs.items()}
    return Form(f.field, f.nvars, f.degree - sum(shifts), coeffs)


def _dehomogenize(f: Form, chart: int, u: int, v: int) -> list[list]:
    """Form -> dense bivariate [v-degree][u-degree] in the chart x_chart = 1."""
    field = f.field
    dv = max(m[v] for m in f.coeffs)
    out: list[list] = [[] for _ in range(dv + 1)]
    for m, c in f.coeffs.items():
        a, b = m[u], m[v]
        row = out[b]
        while len(row) <= a:
            row.append(field.zero)
        row[a] = field.add(row[a], c)
    return _bipoly_trim([_UPoly.trim(field, row) for row in out])


def _rehomogenize(field, poly: list[list], nvars: int, chart: int, u: int, v: int) -> Form:
    total = 0
    for b, coeff in enumerate(poly):
        for a, c in enumerate(coeff):
            if not field.is_zero(c):
                total = max(total, a + b)
    coeffs = {}
    for b, coeff in enumerate(poly):
        for a, c in enumerate(coeff):
            if field.is_zero(c):
                continue
            mono = [0] * nvars
            mono[u] = a
            mono[v] = b
            mono[chart] = total - a - b
            coeffs[tuple(mono)] = c
    return Form(field, nvars, total, coeffs)


def gcd_forms(f: Form, g: Form) -> Form:
    """Greatest common divisor of two nonzero plane forms, monic.

    Supported for N = 2 only.  Shared variable factors are divided out first;
    the remaining pair is dehomogenized on a variable dividing neither form
    (preferring the last variable occurring as a pure power), reduced by a
    primitive-part Euclidean gcd in one variable over the other, and the
    result rehomogenized.
    """
    if f.nvars != 3 or g.nvars != 3:
        raise FormError("gcd_forms supports ambient dimension N = 2 only")
    if f.is_zero() or g.is_zero():
        raise FormError("gcd of a zero form")
    field = f.field
    shared = tuple(min(_var_valuation(f, i), _var_valuation(g, i)) for i in range(3))
    f1 = _shift_down(f, shared)
    g1 = _shift_down(g, shared)
    mono_part = Form.monomial(field, 3, shared)
    if f1.degree == 0 or g1.degree == 0:
        return mono_part
    chart = None
    for c in (2, 1, 0):
        pure_f = tuple(f1.degree if i == c else 0 for i in range(3)) in f1.coeffs
        pure_g = tuple(g1.degree if i == c else 0 for i in range(3)) in g1.coeffs
        if pure_f or pure_g:
            chart = c
            break
    if chart is None:
        chart = next(c for c in (2, 1, 0) if _var_valuation(f1, c) == 0 or _var_valuation(g1, c) == 0)
    u, v = [i for i in range(3) if i != chart]
    h_affine = _bipoly_gcd(field, _dehomogenize(f1, chart, u, v), _dehomogenize(g1, chart, u, v))
    h = _rehomogenize(field, h_affine, 3, chart, u, v).mul(mono_part).monic()
    if divide_form(f, h) is None or divide_form(g, h) is None:
        raise FormError("internal error: computed gcd does not divide the inputs")
    return h


def fixed_divisor(slice_basis: SliceBasis) -> Form:
    """gcd of every form in a nonzero slice; constant iff fixed-component free."""
    if slice_basis.dim == 0:
        raise FormError("fixed divisor of a zero slice")
    forms = slice_basis.forms()
    g = forms[0].monic()
    for nxt in forms[1:]:
        if g.degree == 0:
            break
        g = gcd_forms(g, nxt)
    return g


# ---------------------------------------------------------------------------
# restriction to a line and resultants (independent coprimality oracle)
# ---------------------------------------------------------------------------


def restrict_to_line(f: Form, a, b) -> list:
    """Coefficients of the binary form f(s*a + t*b), listed by t-degree."""
    field = f.field
    d = f.degree
    total = [field.zero] * (d + 1)
    for mono, c in f.coeffs.items():
        term = [c]
        for ai, bi, e in zip(a, b, mono):
            if e == 0:
                continue
            factor = [
                field.mul(field.from_int(comb(e, k)), field.mul(_pow(field, ai, e - k), _pow(field, bi, k)))
                for k in range(e + 1)
            ]
            term = _UPoly.mul(field, term, factor)
            if not term:
                break
        for i, x in enumerate(term):
            total[i] = field.add(total[i], x)
    return total


def _pow(field, x, e: int):
    out = field.one
    for _ in range(e):
        out = field.mul(out, x)
    return out


def resultant_nonzero(u: list, v: list, field: Field) -> bool:
    """Whether the Sylvester resultant of two univariate polynomials is nonzero."""
    du, dv = len(u) - 1, len(v) - 1
    if du < 0 or dv < 0:
        return False
    if du == 0 or dv == 0:
        return not (field.is_zero(u[-1]) or field.is_zero(v[-1]))
    n = du + dv
    rows = []
    for i in range(dv):
        row = [field.zero] * n
        for j, c in enumerate(reversed(u)):
            row[i + j] = c
        rows.append(row)
    for i in range(du):
        row = [field.zero] * n
        for j, c in enumerate(reversed(v)):
            row[i + j] = c
        rows.append(row)
    return linalg.rank(rows, field) == n
