from fractions import Fraction

from fatpoints.fields import DEFAULT_PRIME, RECHECK_PRIME, PrimeField
from fatpoints.suites import (
    CorpusEntry,
    build_suite,
    exceptional_entries,
    fat_probe_entries,
    general_entries,
    rational_entries,
    run_suite,
    star_entries,
    suite_alpha_ratio,
    suite_chudnovsky,
    suite_conj_main,
    suite_gamma_refined,
    suite_power_products,
    suite_tight_containment,
)

F = PrimeField()


def _dispositions(verdict):
    return {r.case_key: r.disposition for r in verdict.records}


def test_conj_main_stars_and_generals():
    corpus = star_entries(F, 2, (4,)) + general_entries(F, (5, 6), (11,))
    verdict = run_suite(suite_conj_main(F, corpus, r_max=2), F)
    assert verdict.aggregate == "all-pass"
    assert verdict.exit_code == 0
    # control cases are wired in and pass by failing
    controls = [r for r in verdict.records if r.params.get("control")]
    assert len(controls) == 2
    assert all(r.holds is False and r.disposition == "pass" for r in controls)


def test_conj_main_classification_table():
    corpus = star_entries(F, 2, (4,)) + fat_probe_entries(F)
    spec = suite_conj_main(F, corpus, r_max=1)
    by_scheme = {}
    for case in spec.cases:
        by_scheme.setdefault(case.scheme_id, set()).add(case.classification)
    star_id = corpus[0].scheme_id
    fat_id = corpus[1].scheme_id
    assert by_scheme[star_id] == {"regression"}  # proven for stars
    assert by_scheme[fat_id] == {"probe"}  # open for general fat schemes


def test_conj_main_probe_polarity_exercises_exit_one():
    spec = suite_conj_main(F, None, r_max=1, control_polarity="probe")
    verdict = run_suite(spec, F)
    assert verdict.aggregate == "counterexample"
    assert verdict.exit_code == 1
    (rec,) = verdict.records
    assert rec.disposition == "counterexample-candidate"
    stages = [rc["stage"] for rc in rec.rechecks]
    assert stages == ["fresh-recompute", "second-prime"]
    assert rec.rechecks[1]["field"]["p"] == RECHECK_PRIME
    # the counterexample record embeds a re-verifiable witness
    assert rec.evidence["containment"]["witness"] is not None


def test_chudnovsky_single_point_equality():
    # a single point realizes equality: alpha_m/m = 1 = (1 + N - 1)/N
    corpus = general_entries(F, (1,), (11,))
    verdict = run_suite(suite_chudnovsky(F, corpus, m_max=3), F)
    assert verdict.aggregate == "all-pass"
    for rec in verdict.records:
        assert Fraction(rec.evidence["alpha_m"], rec.params["m"]) == 1


def test_chudnovsky_star_p3_probe():
    corpus = star_entries(F, 3, (4,))
    verdict = run_suite(suite_chudnovsky(F, corpus, m_max=3), F)
    assert verdict.aggregate == "all-pass"
    # N=3 cases are probes (the bound is conjectural there), N=2 would be regression
    assert all(r.classification == "probe" for r in verdict.records)
    # m=3 realizes equality (alpha+2)/3 = 4/3 for the 4-plane star
    rec = next(r for r in verdict.records if r.params["m"] == 3)
    assert rec.evidence["lhs"] == rec.evidence["rhs"]


def test_tight_containment_star_and_ci():
    corpus = star_entries(F, 2, (4,)) + general_entries(F, (4,), (11,))
    verdict = run_suite(suite_tight_containment(F, corpus, r_max=2), F)
    assert verdict.aggregate == "all-pass"
    d = _dispositions(verdict)
    assert all(v == "pass" for v in d.values())
    # stars and complete intersections run as regressions on all three relations
    for rec in verdict.records:
        assert rec.classification == "regression"


def test_tight_containment_five_general():
    corpus = general_entries(F, (5,), (11,))
    verdict = run_suite(suite_tight_containment(F, corpus, r_max=2), F)
    assert verdict.aggregate == "all-pass"
    shifted = [r for r in verdict.records if "in-shifted" in r.case_key]
    # the shifted variant rests on a characteristic-zero proof: probe here
    assert all(r.classification == "probe" for r in shifted)


def test_alpha_ratio_star_ci_general():
    corpus = (star_entries(F, 2, (4,)) + general_entries(F, (4, 7), (11,)))
    verdict = run_suite(suite_alpha_ratio(F, corpus, bound=2), F)
    assert verdict.aggregate == "all-pass"


def test_power_products_star_detection():
    corpus = star_entries(F, 2, (4,))
    verdict = run_suite(suite_power_products(F, corpus, m_max=2, k_max=2), F)
    assert verdict.aggregate == "all-pass"
    by_m = {r.params["m"]: r.evidence for r in verdict.records if "m" in r.params}
    assert by_m[2]["applicable"] is True  # alpha*beta = 4*6 = 24 = m^2 n
    assert "equality-k2" in by_m[2]


def test_power_products_nine_points_not_applicable():
    corpus = general_entries(F, (9,), (11,))
    verdict = run_suite(suite_power_products(F, corpus, m_max=2, k_max=2), F)
    assert verdict.aggregate == "all-pass"
    for rec in verdict.records:
        assert rec.evidence["applicable"] is False
        m = rec.params["m"]
        assert rec.evidence["product"] == 3 * m * (3 * m + 1)  # 3m(3m+1), never 9m^2


def test_power_products_five_general_factorizations():
    corpus = general_entries(F, (5,), (11,))
    verdict = run_suite(suite_power_products(F, corpus, m_max=2, k_max=3, odd_r_max=2), F)
    assert verdict.aggregate == "all-pass"
    odd = [r for r in verdict.records if "odd-r" in r.case_key]
    assert len(odd) == 2  # I^(3) = I^(2) I and I^(5) = I^(4) I
    assert all(r.classification == "regression" for r in odd)
    even = next(r for r in verdict.records if r.params.get("m") == 2)
    assert even.evidence["applicable"] is True  # alpha*beta = 4*5 = 20 = 4*5


def test_gamma_refined_star_affirmative_and_formula():
    corpus = star_entries(F, 2, (4,))
    verdict = run_suite(suite_gamma_refined(F, corpus, m_max=3, t_max=1), F)
    assert verdict.aggregate == "all-pass"
    formula = [r for r in verdict.records if "star-formula" in r.case_key]
    assert len(formula) == 3 and all(r.classification == "regression" for r in formula)
    question = [r for r in verdict.records if "plus-N-1" in r.case_key]
    assert all(r.classification == "regression" for r in question)  # affirmative for stars


def test_gamma_refined_rationals_euler_containment():
    corpus = rational_entries()
    verdict = run_suite(suite_gamma_refined(F, corpus, m_max=2, t_max=1), F)
    assert verdict.aggregate == "all-pass"
    euler = [r for r in verdict.records if "sym2-in-MI" in r.case_key]
    assert len(euler) == len(corpus)
    assert all(r.classification == "regression" for r in euler)


def test_gamma_refined_t1_m1_reduces_to_proven():
    # t = m = 1: the shifted-product question is the r=1 main containment
    corpus = general_entries(F, (6,), (11,))
    verdict = run_suite(suite_gamma_refined(F, corpus, m_max=1, t_max=1), F)
    assert verdict.aggregate == "all-pass"
    q = [r for r in verdict.records if "shift-Mt|" in r.case_key]
    assert q and all(r.holds for r in q)


def test_exceptional_configurations_well_formed():
    entries = exceptional_entries(F)
    assert [e.scheme.npoints for e in entries] == [3, 6, 6, 7]
    ids = [e.scheme_id for e in entries]
    assert len(set(ids)) == 4


def test_exceptional_configurations_pass_main_suites():
    corpus = exceptional_entries(F)
    assert run_suite(suite_chudnovsky(F, corpus, m_max=2), F).aggregate == "all-pass"
    assert run_suite(suite_conj_main(F, corpus, r_max=1), F).aggregate == "all-pass"


def test_verdict_determinism():
    corpus = star_entries(F, 2, (4,)) + general_entries(F, (5,), (11,))
    spec = suite_chudnovsky(F, corpus, m_max=2)
    v1 = run_suite(spec, F)
    v2 = run_suite(build_suite("chudnovsky", F, corpus, m_max=2), F)
    assert v1.to_dict() == v2.to_dict()


def test_small_m_beta_values_from_the_literature():
    # beta tables for 6..8 general points, tested at small m
    from fatpoints.ideals import IdealContext
    from fatpoints.invariants import beta

    ctx = IdealContext()
    expect = {6: [3, 5], 7: [3, 6], 8: [3, 6]}  # ceil(5m/2), ceil(8m/3), ceil(17m/6)
    for n, betas in expect.items():
        scheme = general_entries(F, (n,), (11,))[0].scheme
        for m, want in enumerate(betas, start=1):
            assert beta(ctx.symbolic(scheme, m)) == want, (n, m)
