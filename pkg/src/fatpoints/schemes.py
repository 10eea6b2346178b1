"""Geometric inputs: explicit points, seeded general points, star configurations.

Points are stored normalized (first nonzero coordinate = 1) so distinctness is
a plain equality test.  Schemes are immutable after validation and carry their
construction provenance, which makes them rebuildable under a different prime
for counterexample rechecks.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb

from . import linalg
from .fields import Field, SeedStream, random_scalar, stable_seed


class SchemeError(ValueError):
    pass


class ProjectivePoint:
    """A point of P^N with canonical coordinates."""

    __slots__ = ("coords",)

    def __init__(self, coords: tuple):
        self.coords = coords

    def __eq__(self, other):
        return isinstance(other, ProjectivePoint) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "[" + ":".join(str(c) for c in self.coords) + "]"


def normalize_point(coords, field: Field) -> ProjectivePoint:
    vals = [field.from_int(c) if isinstance(c, int) else c for c in coords]
    lead = next((i for i, v in enumerate(vals) if not field.is_zero(v)), None)
    if lead is None:
        raise SchemeError("projective point needs a nonzero coordinate")
    inv = field.inv(vals[lead])
    return ProjectivePoint(tuple(field.mul(v, inv) for v in vals))


class FatPointScheme:
    """Z = m1*p1 + ... + mn*pn with pairwise-distinct points."""

    __slots__ = ("field", "N", "entries", "provenance")

    def __init__(self, field: Field, N: int, entries, provenance: dict):
        pts = [pt for pt, _ in entries]
        if len(set(pts)) != len(pts):
            dup = next(p for p in pts if pts.count(p) > 1)
            raise SchemeError(f"duplicate point {dup}")
        for pt, m in entries:
            if m < 1:
                raise SchemeError("multiplicities must be >= 1")
            if field.kind == "prime" and m >= field.p:
                # order-m vanishing is characteristic-safe only for p > m
                raise SchemeError(f"multiplicity {m} requires a prime above it, got p={field.p}")
            if len(pt.coords) != N + 1:
                raise SchemeError("point has wrong ambient dimension")
        self.field = field
        self.N = N
        self.entries = tuple(entries)
        self.provenance = dict(provenance)

    @property
    def npoints(self) -> int:
        return len(self.entries)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(m for _, m in self.entries)

    def is_radical(self) -> bool:
        return all(m == 1 for m in self.multiplicities)

    def degree(self) -> int:
        N = self.N
        return sum(comb(m + N - 1, N) for m in self.multiplicities)

    def scale(self, m: int) -> "FatPointScheme":
        """Multiplicity scaling: the scheme of the m-th symbolic power."""
        if m < 1:
            raise SchemeError("scale factor must be >= 1")
        if m == 1:
            return self
        prov = dict(self.provenance)
        prov["scale"] = prov.get("scale", 1) * m
        return FatPointScheme(
            self.field, self.N, [(pt, mult * m) for pt, mult in self.entries], prov
        )

    def content_key(self) -> str:
        pts = ";".join(
            ",".join(self.field.format(c) for c in pt.coords) + f"x{m}" for pt, m in self.entries
        )
        fld = self.field.config()
        fld_s = f"prime:{fld['p']}" if fld["kind"] == "prime" else "rationals"
        return f"{fld_s}|N={self.N}|{pts}"

    def scheme_id(self) -> str:
        prov = self.provenance
        kind = prov.get("kind", "explicit")
        scale = prov.get("scale", 1)
        if kind == "general":
            base = f"general-n{prov['n']}-seed{prov['seed']}"
        elif kind == "star":
            base = f"star-s{prov['s']}" + (f"-seed{prov['seed']}" if "seed" in prov else "")
        else:
            base = prov.get("label", f"explicit-{self.npoints}pts")
        if scale != 1:
            base += f"-x{scale}"
        return f"{base}-P{self.N}"

    def rebuild(self, field: Field) -> "FatPointScheme":
        """Reconstruct this scheme from provenance under another field."""
        prov = self.provenance
        kind = prov.get("kind", "explicit")
        scale = prov.get("scale", 1)
        if kind == "general":
            base = general_points(prov["n"], self.N, field, prov["seed"])
        elif kind == "star" and "seed" in prov:
            base = star_configuration(prov["s"], self.N, field, seed=prov["seed"])
        elif kind == "star":
            base = star_configuration(prov["s"], self.N, field, hyperplanes=prov["hyperplanes"])
        else:
            base = explicit_scheme(
                field, self.N, prov["coords"], label=prov.get("label", "explicit")
            )
        return base.scale(scale) if scale != 1 else base

    def __eq__(self, other):
        return (
            isinstance(other, FatPointScheme)
            and self.field == other.field
            and self.N == other.N
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.N, self.entries))

    def __repr__(self):
        return f"FatPointScheme({self.scheme_id()}, deg={self.degree()})"


def explicit_scheme(field: Field, N: int, coords_with_mults, label: str = "explicit") -> FatPointScheme:
    """Scheme from raw coordinate rows [(c0..cN, mult), ...] (ints or Fractions)."""
    entries = []
    for row in coords_with_mults:
        coords, mult = tuple(row[0]), int(row[1])
        entries.append((normalize_point(coords, field), mult))
    prov = {
        "kind": "explicit",
        "coords": tuple((tuple(c for c in row[0]), int(row[1])) for row in coords_with_mults),
        "label": label,
        "scale": 1,
    }
    return FatPointScheme(field, N, entries, prov)


def general_points(n: int, N: int, field: Field, seed: int) -> FatPointScheme:
    """n pairwise-distinct seeded uniform points, all multiplicities 1."""
    if field.kind != "prime":
        raise SchemeError("general points require a prime field (seeded sampling)")
    if n < 1:
        raise SchemeError("need n >= 1 points")
    stream = SeedStream(stable_seed("general-points", N, n, field.p, seed))
    points: list[ProjectivePoint] = []
    seen = set()
    attempts = 0
    while len(points) < n:
        attempts += 1
        if attempts > 64 * n + 64:
            raise SchemeError("exhausted resampling budget drawing distinct points")
        coords = tuple(random_scalar(field, stream) for _ in range(N + 1))
        if all(field.is_zero(c) for c in coords):
            continue
        pt = normalize_point(coords, field)
        if pt.coords in seen:
            continue
        seen.add(pt.coords)
        points.append(pt)
    prov = {"kind": "general", "n": n, "seed": seed, "scale": 1}
    return FatPointScheme(field, N, [(pt, 1) for pt in points], prov)


def _validate_hyperplanes(hyperplanes, N: int, field: Field):
    """Every N meet in one point; no N+1 concurrent.  Returns None or offender."""
    s = len(hyperplanes)
    for subset in combinations(range(s), N):
        rows = [hyperplanes[i] for i in subset]
        if linalg.rank(rows, field, N + 1) != N:
            return ("degenerate N-subset", subset)
    if s >= N + 1:
        for subset in combinations(range(s), N + 1):
            rows = [hyperplanes[i] for i in subset]
            if linalg.rank(rows, field, N + 1) != N + 1:
                return ("concurrent (N+1)-subset", subset)
    return None


def star_configuration(
    s: int,
    N: int,
    field: Field,
    seed: int | None = None,
    hyperplanes=None,
) -> FatPointScheme:
    """The C(s, N) pairwise intersection points of s generic hyperplanes."""
    if s < N:
        raise SchemeError("a star needs at least N hyperplanes")
    if hyperplanes is not None:
        planes = [[field.from_int(c) if isinstance(c, int) else c for c in h] for h in hyperplanes]
        if len(planes) != s or any(len(h) != N + 1 for h in planes):
            raise SchemeError("expected s hyperplanes with N+1 coefficients each")
        bad = _validate_hyperplanes(planes, N, field)
        if bad is not None:
            raise SchemeError(f"hyperplane family fails genericity: {bad[0]} {bad[1]}")
        prov = {
            "kind": "star",
            "s": s,
            "hyperplanes": tuple(tuple(c for c in h) for h in hyperplanes),
            "scale": 1,
        }
    else:
        if seed is None:
            raise SchemeError("star configuration needs a seed or explicit hyperplanes")
        if field.kind != "prime":
            raise SchemeError("seeded stars require a prime field")
        stream = SeedStream(stable_seed("star-planes", N, s, field.p, seed))
        planes = None
        for _ in range(32):
            cand = []
            for _ in range(s):
                vec = [random_scalar(field, stream) for _ in range(N + 1)]
                while all(field.is_zero(v) for v in vec):
                    vec = [random_scalar(field, stream) for _ in range(N + 1)]
                cand.append(vec)
            if _validate_hyperplanes(cand, N, field) is None:
                planes = cand
                break
        if planes is None:
            raise SchemeError("exhausted resampling budget for star hyperplanes")
        prov = {"kind": "star", "s": s, "seed": seed, "scale": 1}
    points = []
    for subset in combinations(range(s), N):
        ker = linalg.kernel([planes[i] for i in subset], field, N + 1)
        if ker.dim != 1:
            raise SchemeError(f"hyperplanes {subset} do not meet in a single point")
        points.append(normalize_point(ker.row(0), field))
    if len(set(points)) != len(points):
        raise SchemeError("star intersection points are not pairwise distinct")
    scheme = FatPointScheme(field, N, [(pt, 1) for pt in points], prov)
    # every point lies on exactly N of the s hyperplanes
    for pt in points:
        on = sum(
            1
            for h in planes
            if field.is_zero(_dot(field, h, pt.coords))
        )
        if on != N:
            raise SchemeError(f"star point {pt} lies on {on} hyperplanes, expected {N}")
    return scheme


def _dot(field: Field, h, coords):
    total = field.zero
    for a, b in zip(h, coords):
        total = field.add(total, field.mul(a, b))
    return total
