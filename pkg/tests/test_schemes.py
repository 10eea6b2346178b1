from math import comb

import pytest

from fatpoints import linalg
from fatpoints.fields import PrimeField, RationalField
from fatpoints.schemes import (
    SchemeError,
    explicit_scheme,
    general_points,
    normalize_point,
    star_configuration,
)

F = PrimeField()
Q = RationalField()


def test_normalize_leading_one():
    pt = normalize_point([0, 3, 6], PrimeField(7))
    assert pt.coords == (0, 1, 2)
    with pytest.raises(SchemeError):
        normalize_point([0, 0, 0], F)


def test_coordinate_star_three_lines():
    star = star_configuration(3, 2, F, hyperplanes=[[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    coords = sorted(pt.coords for pt, _ in star.entries)
    assert coords == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_star_counts():
    assert star_configuration(5, 2, F, seed=3).npoints == 10  # C(5, 2)
    assert star_configuration(4, 3, F, seed=3).npoints == 4  # C(4, 3)
    for s in (4, 5, 6):
        star = star_configuration(s, 2, F, seed=9)
        assert star.npoints == comb(s, 2)
        assert len({pt for pt, _ in star.entries}) == star.npoints


def test_degenerate_star_rejected_with_subset():
    # three concurrent lines through [0:0:1]
    planes = [[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]]
    with pytest.raises(SchemeError) as err:
        star_configuration(4, 2, F, hyperplanes=planes)
    assert "(0, 1, 2)" in str(err.value)


def test_general_points_seed_deterministic():
    a = general_points(6, 2, F, seed=77)
    b = general_points(6, 2, F, seed=77)
    assert a == b
    assert a.entries == b.entries
    c = general_points(6, 2, F, seed=78)
    assert a != c


def test_general_points_distinct_and_no_three_collinear():
    # rank oracle: every 3x3 coordinate minor of 5 general points is nonsingular
    scheme = general_points(5, 2, F, seed=11)
    pts = [pt.coords for pt, _ in scheme.entries]
    assert len(set(pts)) == 5
    from itertools import combinations

    for triple in combinations(pts, 3):
        assert linalg.rank([list(p) for p in triple], F) == 3


def test_general_points_rationals_rejected():
    with pytest.raises(SchemeError):
        general_points(3, 2, Q, seed=1)


def test_single_point_degree():
    scheme = general_points(1, 2, F, seed=1)
    assert scheme.degree() == 1


def test_degree_formula_multiplicities():
    # Z = 2p + q in the plane scaled by 2 -> 4p + 2q of degree C(5,2)+C(3,2) = 13
    scheme = explicit_scheme(F, 2, [([1, 0, 0], 2), ([0, 1, 0], 1)])
    scaled = scheme.scale(2)
    assert scaled.multiplicities == (4, 2)
    assert scaled.degree() == 13
    assert scheme.degree() == sum(comb(m + 1, 2) for m in scheme.multiplicities)


def test_scale_identity_and_composition():
    scheme = general_points(4, 2, F, seed=5)
    assert scheme.scale(1) is scheme
    assert scheme.scale(2).scale(3) == scheme.scale(6)
    assert scheme.scale(2).scale(3).provenance["scale"] == 6


def test_nine_points_degree():
    assert general_points(9, 2, F, seed=2).degree() == 9


def test_duplicate_points_rejected():
    with pytest.raises(SchemeError) as err:
        explicit_scheme(F, 2, [([1, 0, 0], 1), ([2, 0, 0], 1)])
    assert "[1:0:0]" in str(err.value)


def test_star_points_on_exactly_N_hyperplanes():
    # validated inside the constructor; also assert via evaluation here
    star = star_configuration(4, 2, F, hyperplanes=[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]])
    planes = star.provenance["hyperplanes"]
    for pt, _ in star.entries:
        on = sum(
            1 for h in planes
            if sum(int(a) * int(c) for a, c in zip(h, pt.coords)) % F.p == 0
        )
        assert on == 2


def test_rebuild_under_second_prime():
    from fatpoints.fields import RECHECK_PRIME

    F2 = PrimeField(RECHECK_PRIME)
    for scheme in (
        general_points(5, 2, F, seed=11),
        star_configuration(4, 2, F, seed=5).scale(3),
        explicit_scheme(F, 2, [([1, 0, 0], 2), ([0, 1, 1], 1)]),
    ):
        rebuilt = scheme.rebuild(F2)
        assert rebuilt.field == F2
        assert rebuilt.N == scheme.N
        assert rebuilt.npoints == scheme.npoints
        assert rebuilt.multiplicities == scheme.multiplicities


def test_content_key_distinguishes_fields():
    a = explicit_scheme(F, 2, [([1, 0, 0], 1)])
    b = explicit_scheme(Q, 2, [([1, 0, 0], 1)])
    assert a.content_key() != b.content_key()
