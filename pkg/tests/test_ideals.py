from math import comb

import numpy as np
import pytest

from fatpoints.fields import PrimeField, RationalField
from fatpoints.forms import Form, monomial_basis
from fatpoints.ideals import (
    IdealContext,
    IdealError,
    MaximalIdeal,
    SchemeIdeal,
    SpanIdeal,
    conditions_matrix,
    contains,
    power,
    product,
    shift_by_M,
    verify_containment_witness,
)
from fatpoints.schemes import explicit_scheme, general_points, star_configuration

F = PrimeField()
Q = RationalField()


def _star4():
    return star_configuration(4, 2, F, hyperplanes=[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]])


def test_conditions_single_point_degree_one():
    scheme = explicit_scheme(F, 2, [([1, 2, 3], 1)])
    rows = conditions_matrix(scheme, 1)
    assert rows.shape == (1, 3)


def test_conditions_double_point_counts():
    scheme = explicit_scheme(F, 2, [([1, 2, 3], 2)])
    rows = conditions_matrix(scheme, 2)
    assert rows.shape[0] == 3  # local multi-indices of degree < 2
    I = SchemeIdeal(scheme)
    assert I.slice_dim(2) == 3  # 6 monomials minus 3 independent conditions


def test_conditions_three_points_degree_one():
    scheme = general_points(3, 2, F, seed=4)
    rows = conditions_matrix(scheme, 1)
    assert rows.shape == (3, 3)
    assert SchemeIdeal(scheme).slice_dim(1) == 0  # no line through 3 general points


def test_conditions_three_points_degree_two_kernel():
    # hand-checkable oracle: 6 monomials minus 3 independent evaluations
    scheme = general_points(3, 2, F, seed=4)
    assert SchemeIdeal(scheme).slice_dim(2) == 3


def test_double_point_kills_linear_forms():
    scheme = explicit_scheme(F, 2, [([1, 2, 3], 2)])
    I = SchemeIdeal(scheme)
    assert I.slice_dim(1) == 0
    assert I.hilbert_function(1) == 3


def test_characteristic_safe_conditions_small_prime():
    # order-3 vanishing over GF(5): binomial-coefficient rows must not degenerate
    F5 = PrimeField(5)
    scheme = explicit_scheme(F5, 2, [([1, 2, 3], 3)])
    I = SchemeIdeal(scheme)
    # deg Z = C(4,2) = 6 conditions, independent from degree 2 on
    assert I.hilbert_function(6) == 6
    assert I.slice_dim(2) == 0
    assert I.slice_dim(3) == 4  # cubes of the two lines: L1^3, L1^2 L2, L1 L2^2, L2^3
    assert I.regularity() == 3


def test_multiplicity_must_stay_below_prime():
    from fatpoints.schemes import SchemeError

    F5 = PrimeField(5)
    with pytest.raises(SchemeError):
        explicit_scheme(F5, 2, [([1, 2, 3], 5)])


def test_slice_maximal_ideal():
    M = MaximalIdeal(F, 2)
    assert M.slice_dim(0) == 0
    assert M.slice_dim(1) == 3
    assert M.slice_dim(4) == len(monomial_basis(2, 4))


def test_star4_slices():
    I = SchemeIdeal(_star4())
    assert I.slice_dim(2) == 0
    assert I.slice_dim(3) == 4


def test_five_general_double_slices():
    scheme = general_points(5, 2, F, seed=11).scale(2)
    I = SchemeIdeal(scheme)
    assert I.slice_dim(3) == 0
    assert I.slice_dim(4) > 0


def test_minimal_generators_single_point():
    scheme = explicit_scheme(F, 2, [([1, 2, 3], 1)])
    assert SchemeIdeal(scheme).minimal_generator_degrees() == (1, 1)


def test_minimal_generators_star3():
    scheme = explicit_scheme(F, 2, [([0, 0, 1], 1), ([0, 1, 0], 1), ([1, 0, 0], 1)])
    I = SchemeIdeal(scheme)
    assert I.slice_dim(2) == 3
    assert I.regularity() == 2
    assert I.minimal_generator_degrees() == (2, 2, 2)


def test_minimal_generators_four_general():
    I = SchemeIdeal(general_points(4, 2, F, seed=11))
    assert I.minimal_generator_degrees() == (2, 2)
    # complete intersection of two conics: dim (M*I_2)_3 = 6 = dim I_3
    assert I.slice_dim(3) == 6


def test_generators_generate_slicewise():
    scheme = general_points(5, 2, F, seed=23).scale(2)
    I = SchemeIdeal(scheme)
    span = SpanIdeal(I.minimal_generators())
    for t in range(I.regularity() + 2):
        assert span.slice_dim(t) == I.slice_dim(t)


def test_power_one_identity_slicewise():
    I = SchemeIdeal(general_points(4, 2, F, seed=7))
    P1 = power(I, 1)
    for t in range(7):
        assert P1.slice_dim(t) == I.slice_dim(t)


def test_power_of_maximal():
    M = MaximalIdeal(F, 2)
    P = power(M, 3)
    assert P.slice_dim(2) == 0
    assert P.slice_dim(3) == comb(5, 2)
    with pytest.raises(IdealError):
        power(M, 0)


def test_power_four_general_squared():
    I = SchemeIdeal(general_points(4, 2, F, seed=11))
    sq = power(I, 2)
    assert sq.slice_dim(4) == 3  # products of the two conics


def test_ordinary_inside_symbolic_slicewise():
    scheme = general_points(5, 2, F, seed=11)
    ctx = IdealContext()
    sq_span = ctx.power_of(scheme, 2)
    symb = ctx.symbolic(scheme, 2)
    for t in range(3, 9):
        span_slice = sq_span.slice(t)
        target = symb.slice(t)
        for row in span_slice.basis.rows():
            assert target.basis.contains_vector(row)


def test_symbolic_power_product_rule_five_points():
    # (I^(2))^2 inside I^(4) slicewise up to degree 12
    scheme = general_points(5, 2, F, seed=11)
    ctx = IdealContext()
    span = power(ctx.symbolic(scheme, 2), 2)
    rep = contains(ctx.symbolic(scheme, 4), span)
    assert rep.holds
    assert rep.certificate["bound"] <= 12


def test_shift_of_maximal_equals_square():
    M = MaximalIdeal(F, 2)
    shifted = shift_by_M(M, 1)
    sq = power(M, 2)
    for t in range(5):
        assert shifted.slice_dim(t) == sq.slice_dim(t)


def test_shift_zero_is_identity():
    I = SchemeIdeal(general_points(3, 2, F, seed=2))
    assert shift_by_M(I, 0) is I


def test_shift_raises_alpha_by_j():
    ctx = IdealContext()
    for scheme in (general_points(4, 2, F, seed=3), _star4()):
        I = ctx.ideal(scheme)
        a = I.alpha()
        for j in (1, 2):
            assert shift_by_M(I, j).alpha() == a + j


def test_contains_reflexive_and_transitive():
    scheme = general_points(5, 2, F, seed=11)
    ctx = IdealContext()
    I = ctx.ideal(scheme)
    assert contains(I, I).holds
    I2 = ctx.symbolic(scheme, 2)
    I4 = ctx.symbolic(scheme, 4)
    # I^(4) <= I^(2) <= I, and directly I^(4) <= I
    assert contains(I, I2).holds
    assert contains(I2, I4).holds
    assert contains(I, I4).holds


def test_negative_control_witness():
    # M^{2r} not inside M^{2r+1}: inflated shift j = r(N-1)+1 must fail
    M = MaximalIdeal(F, 2)
    for r in (1, 2):
        A = shift_by_M(power(M, r), r + 1)
        B = power(M, 2 * r)
        rep = contains(A, B)
        assert not rep.holds
        assert rep.witness_degree == 2 * r
        assert verify_containment_witness(A, B, rep)


def test_els_hh_regression_small_corpus():
    # symbolic Nr-th power inside the r-th ordinary power, r <= 3
    ctx = IdealContext()
    for scheme in (
        explicit_scheme(F, 2, [([0, 0, 1], 1), ([0, 1, 0], 1), ([1, 0, 0], 1)]),
        general_points(4, 2, F, seed=11),
        general_points(6, 2, F, seed=23),
        explicit_scheme(F, 2, [([1, 0, 0], 2), ([0, 1, 1], 1)]),
    ):
        for r in (1, 2, 3):
            rep = contains(ctx.power_of(scheme, r), ctx.symbolic(scheme, 2 * r))
            assert rep.holds, (scheme.scheme_id(), r)


def test_main_containment_five_general():
    ctx = IdealContext()
    scheme = general_points(5, 2, F, seed=11)
    for r in (1, 2):
        rep = contains(ctx.shifted_power(scheme, r, r), ctx.symbolic(scheme, 2 * r))
        assert rep.holds


def test_conditions_count_invariant():
    for scheme in (general_points(3, 2, F, seed=5).scale(2), _star4().scale(3)):
        rows = conditions_matrix(scheme, 6)
        assert rows.shape[0] == scheme.degree()


def test_slice_dimension_bounds():
    # dim I_t >= C(t+N, N) - deg Z with equality for t >= reg - 1
    for scheme in (general_points(7, 2, F, seed=11), _star4().scale(2)):
        I = SchemeIdeal(scheme)
        reg = I.regularity()
        d = scheme.degree()
        for t in range(reg + 3):
            naive = comb(t + 2, 2) - d
            assert I.slice_dim(t) >= max(naive, 0)
            if t >= reg - 1:
                assert I.slice_dim(t) == naive


def test_contains_requires_common_field():
    I = SchemeIdeal(explicit_scheme(F, 2, [([1, 0, 0], 1)]))
    J = SchemeIdeal(explicit_scheme(Q, 2, [([1, 0, 0], 1)]))
    with pytest.raises(IdealError):
        contains(I, J)


def test_product_handle():
    ctx = IdealContext()
    scheme = general_points(5, 2, F, seed=11)
    prod = product(ctx.symbolic(scheme, 2), ctx.ideal(scheme))
    rep = contains(ctx.symbolic(scheme, 3), prod)
    assert rep.holds  # I^(2) * I inside I^(3)


def test_rationals_backend_slices():
    scheme = explicit_scheme(Q, 2, [([0, 0, 1], 1), ([0, 1, 0], 1), ([1, 0, 0], 1)])
    I = SchemeIdeal(scheme)
    assert I.slice_dim(1) == 0
    assert I.slice_dim(2) == 3
    assert I.regularity() == 2
    assert I.minimal_generator_degrees() == (2, 2, 2)


def test_cache_returns_same_object():
    I = SchemeIdeal(general_points(3, 2, F, seed=6))
    s1 = I.slice(3)
    s2 = I.slice(3)
    assert s1 is s2
