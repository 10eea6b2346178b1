"""Executable verification suites: proven statements as regressions, open
conjectures as falsification probes.

Every case is deterministic given (corpus seeds, field, parameter ranges).
A regression failure indicts the engine and aborts the suite with the full
witness.  A probe failure is recomputed from scratch with fresh caches and
re-run under a second prime before it may surface as a counterexample
candidate; failures that vanish under the recheck are recorded as
characteristic/sample artifacts, not counterexamples.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable

from .fields import DEFAULT_PRIME, RECHECK_PRIME, Field, PrimeField, RationalField
from .ideals import (
    ContainmentReport,
    IdealContext,
    MaximalIdeal,
    contains,
    power,
    product,
    shift_by_M,
)
from .invariants import beta as beta_of
from .invariants import gamma_bracket
from .schemes import FatPointScheme, explicit_scheme, general_points, star_configuration


@dataclass
class CorpusEntry:
    scheme_id: str
    scheme: FatPointScheme
    tags: frozenset

    @staticmethod
    def make(scheme: FatPointScheme, *tags: str) -> "CorpusEntry":
        base = set(tags)
        base.add(f"N={scheme.N}")
        base.add("radical" if scheme.is_radical() else "fat")
        if scheme.field.kind == "rationals":
            base.add("rationals")
        return CorpusEntry(scheme.scheme_id(), scheme, frozenset(base))


@dataclass
class Case:
    key: str
    scheme_id: str
    params: dict
    classification: str  # "regression" | "probe"
    run: Callable[[IdealContext, Field], tuple[bool, dict]]
    expect_failure: bool = False


@dataclass
class SuiteSpec:
    suite_id: str
    params: dict
    corpus_ids: list[str]
    regression_rules: dict[str, tuple[frozenset, ...]]
    cases: list[Case]


@dataclass
class CaseRecord:
    case_key: str
    scheme_id: str
    params: dict
    classification: str
    holds: bool | None
    disposition: str
    evidence: dict
    rechecks: list

    def to_dict(self) -> dict:
        return {
            "case": self.case_key,
            "scheme": self.scheme_id,
            "params": self.params,
            "classification": self.classification,
            "holds": self.holds,
            "disposition": self.disposition,
            "evidence": self.evidence,
            "rechecks": self.rechecks,
        }


@dataclass
class SuiteVerdict:
    suite_id: str
    params: dict
    records: list[CaseRecord]
    aggregate: str  # "all-pass" | "counterexample" | "error"

    @property
    def exit_code(self) -> int:
        return {"all-pass": 0, "counterexample": 1, "error": 2}[self.aggregate]

    def counterexamples(self) -> list[CaseRecord]:
        return [r for r in self.records if r.disposition == "counterexample-candidate"]

    def to_dict(self) -> dict:
        return {
            "suite": self.suite_id,
            "params": self.params,
            "aggregate": self.aggregate,
            "exit_code": self.exit_code,
            "cases": [r.to_dict() for r in self.records],
        }


def _classify(rules: dict, relation: str, tags: frozenset) -> str:
    for conj in rules.get(relation, ()):
        if conj <= tags:
            return "regression"
    return "probe"


def _rebuilt(scheme: FatPointScheme, fld: Field) -> FatPointScheme:
    return scheme if scheme.field == fld else scheme.rebuild(fld)


def run_suite(spec: SuiteSpec, field: Field, recheck: bool = True, cache=None) -> SuiteVerdict:
    from .reports import jsonable  # late import: reports depends on the package root

    ctx = IdealContext()
    records: list[CaseRecord] = []
    aggregate = "all-pass"
    for case in sorted(spec.cases, key=lambda c: c.key):
        cache_key = None
        if cache is not None:
            cache_key = {
                "kind": "suite-case",
                "suite": spec.suite_id,
                "case": case.key,
                "field": field.config(),
                "params": jsonable(case.params),
            }
            stored = cache.get(cache_key)
            if stored is not None:
                record = CaseRecord(
                    case.key, case.scheme_id, case.params, stored["classification"],
                    stored["holds"], stored["disposition"], stored["evidence"],
                    stored["rechecks"],
                )
                records.append(record)
                aggregate = _merge_aggregate(aggregate, record.disposition)
                continue
        try:
            holds, evidence = case.run(ctx, field)
        except Exception as exc:
            records.append(
                CaseRecord(case.key, case.scheme_id, case.params, case.classification,
                           None, "error", {"error": f"{type(exc).__name__}: {exc}"}, [])
            )
            aggregate = "error"
            continue
        ok = (not holds) if case.expect_failure else holds
        rechecks: list = []
        if ok:
            disposition = "pass"
        elif case.classification == "regression":
            disposition = "regression-failure"
        else:
            disposition = _recheck_probe(case, field, holds, rechecks) if recheck else "counterexample-candidate"
        aggregate = _merge_aggregate(aggregate, disposition)
        record = CaseRecord(case.key, case.scheme_id, case.params, case.classification,
                            holds, disposition, jsonable(evidence), rechecks)
        records.append(record)
        if cache is not None:
            cache.put(cache_key, {
                "classification": record.classification,
                "holds": record.holds,
                "disposition": record.disposition,
                "evidence": record.evidence,
                "rechecks": jsonable(record.rechecks),
            })
    return SuiteVerdict(spec.suite_id, spec.params, records, aggregate)


def _merge_aggregate(current: str, disposition: str) -> str:
    if disposition in ("regression-failure", "error"):
        return "error"
    if disposition == "counterexample-candidate" and current != "error":
        return "counterexample"
    return current


def _recheck_probe(case: Case, field: Field, first_holds: bool, rechecks: list) -> str:
    """Independent recomputation, then a second prime; candidate only if both agree."""
    h_fresh, _ = case.run(IdealContext(), field)
    rechecks.append({"stage": "fresh-recompute", "field": field.config(), "holds": h_fresh})
    if h_fresh != first_holds:
        return "characteristic-artifact"
    if field.kind == "prime":
        second = RECHECK_PRIME if field.p != RECHECK_PRIME else DEFAULT_PRIME
        f2 = PrimeField(second)
        try:
            h2, _ = case.run(IdealContext(), f2)
            rechecks.append({"stage": "second-prime", "field": f2.config(), "holds": h2})
            if h2 != first_holds:
                return "characteristic-artifact"
        except Exception as exc:
            rechecks.append({"stage": "second-prime", "field": f2.config(),
                             "error": f"{type(exc).__name__}: {exc}"})
    return "counterexample-candidate"


# ---------------------------------------------------------------------------
# corpus builders
# ---------------------------------------------------------------------------

_CI_COUNTS = {1, 2, 4}


def star_entries(field: Field, N: int, s_values, seed: int = 5) -> list[CorpusEntry]:
    return [
        CorpusEntry.make(star_configuration(s, N, field, seed=seed), "star")
        for s in s_values
    ]


def general_entries(field: Field, n_values, seeds) -> list[CorpusEntry]:
    out = []
    for seed in seeds:
        for n in n_values:
            tags = ["general"]
            if n in _CI_COUNTS:
                tags.append("ci")
            if n == 3:
                tags.append("star")  # any 3 non-collinear points are a 3-line star
            if n == 5:
                tags.append("general-5")
            out.append(CorpusEntry.make(general_points(n, 2, field, seed), *tags))
    return out


def exceptional_entries(field: Field) -> list[CorpusEntry]:
    """The four near-boundary plane configurations of at most 8 points."""
    star3 = [([0, 0, 1], 1), ([0, 1, 0], 1), ([1, 0, 0], 1)]
    star4 = star3 + [([0, 1, -1], 1), ([1, 0, -1], 1), ([1, -1, 0], 1)]
    star3_plus = star3 + [([0, 1, 1], 1), ([1, 0, 1], 1), ([1, 1, 0], 1)]
    star4_plus = star4 + [([0, 1, 1], 1)]
    entries = [
        CorpusEntry.make(explicit_scheme(field, 2, star3, label="star3-lines"), "star", "explicit"),
        CorpusEntry.make(explicit_scheme(field, 2, star4, label="star4-lines"), "star", "explicit"),
        CorpusEntry.make(
            explicit_scheme(field, 2, star3_plus, label="star3-plus-collinear-triples"), "explicit"
        ),
        CorpusEntry.make(
            explicit_scheme(field, 2, star4_plus, label="star4-plus-point-on-line"), "explicit"
        ),
    ]
    return entries


def fat_probe_entries(field: Field) -> list[CorpusEntry]:
    fat1 = explicit_scheme(field, 2, [([1, 0, 0], 2), ([0, 1, 1], 1)], label="fat-2p-q")
    fat2 = explicit_scheme(
        field, 2, [([1, 0, 0], 2), ([0, 1, 0], 1), ([1, 1, 1], 1)], label="fat-2p-q-r"
    )
    return [CorpusEntry.make(fat1, "explicit"), CorpusEntry.make(fat2, "explicit")]


def rational_entries() -> list[CorpusEntry]:
    Q = RationalField()
    single = explicit_scheme(Q, 2, [([1, 0, 0], 1)], label="single-point")
    triangle = explicit_scheme(
        Q, 2, [([1, 0, 0], 1), ([0, 1, 0], 1), ([0, 0, 1], 1)], label="triangle"
    )
    four = explicit_scheme(
        Q, 2,
        [([1, 0, 0], 1), ([0, 1, 0], 1), ([0, 0, 1], 1), ([1, 1, 1], 1)],
        label="four-points",
    )
    fat = explicit_scheme(Q, 2, [([1, 0, 0], 2), ([0, 1, 1], 1)], label="fat-2p-q")
    return [
        CorpusEntry.make(single, "explicit", "ci"),
        CorpusEntry.make(triangle, "explicit", "star"),
        CorpusEntry.make(four, "explicit"),
        CorpusEntry.make(fat, "explicit"),
    ]


def random_radical_corpus(field: Field, n_max: int = 12, seeds=(11, 23, 37, 51, 64, 78, 91, 105, 119)) -> list[CorpusEntry]:
    return general_entries(field, range(1, n_max + 1), seeds)


# ---------------------------------------------------------------------------
# case helpers
# ---------------------------------------------------------------------------


def _containment_case(key, entry, params, classification, build, expect_failure=False) -> Case:
    scheme = entry.scheme

    def run(ctx: IdealContext, fld: Field):
        sch = _rebuilt(scheme, fld)
        A, B = build(ctx, sch, fld)
        rep = contains(A, B)
        return rep.holds, {"containment": rep.to_dict()}

    return Case(key, entry.scheme_id, params, classification, run, expect_failure)


def _equality_evidence(rep_fwd: ContainmentReport, rep_bwd: ContainmentReport) -> dict:
    return {"span-in-symbolic": rep_fwd.to_dict(), "symbolic-in-span": rep_bwd.to_dict()}


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def suite_conj_main(field: Field, corpus: list[CorpusEntry] | None = None, r_max: int = 2,
                    control_polarity: str = "expected-failure") -> SuiteSpec:
    """Main containment: symbolic rN-th power inside M^{r(N-1)} I^r.

    A negative control with I = M and the shift inflated by one is wired in;
    with control_polarity="probe" only the control cases run, as probes, to
    exercise the counterexample path end to end.
    """
    rules = {
        "main-containment": (frozenset({"star"}), frozenset({"ci"}),
                             frozenset({"general", "N=2"})),
        "negative-control": (frozenset(),),
    }
    cases: list[Case] = []
    control_only = control_polarity == "probe"
    if not control_only:
        for entry in corpus or ():
            N = entry.scheme.N
            cls = _classify(rules, "main-containment", entry.tags)
            for r in range(1, r_max + 1):
                def build(ctx, sch, fld, r=r, N=N):
                    A = ctx.shifted_power(sch, r, r * (N - 1))
                    B = ctx.symbolic(sch, r * N)
                    return A, B
                cases.append(_containment_case(
                    f"conj-main|{entry.scheme_id}|r={r}", entry,
                    {"r": r, "j": r * (N - 1), "m": r * N}, cls, build))
    for r in range(1, r_max + 1):
        def build_control(ctx, sch, fld, r=r):
            M = MaximalIdeal(fld, 2)
            A = shift_by_M(power(M, r), r + 1)  # j = r(N-1)+1 in the plane
            B = power(M, 2 * r)
            return A, B
        entry = CorpusEntry("m-control-P2", None, frozenset({"control", "N=2"}))
        key = f"conj-main|zz-control|r={r}"
        params = {"r": r, "j": r + 1, "m": 2 * r, "control": True}
        if control_only:
            case = Case(key, entry.scheme_id, params, "probe",
                        _control_runner(r), expect_failure=False)
        else:
            case = Case(key, entry.scheme_id, params, "regression",
                        _control_runner(r), expect_failure=True)
        cases.append(case)
    corpus_ids = [e.scheme_id for e in corpus or ()]
    return SuiteSpec("conj-main", {"r_max": r_max, "control_polarity": control_polarity},
                     corpus_ids, rules, cases)


def _control_runner(r: int):
    def run(ctx: IdealContext, fld: Field):
        M = MaximalIdeal(fld, 2)
        A = shift_by_M(power(M, r), r + 1)
        B = power(M, 2 * r)
        rep = contains(A, B)
        return rep.holds, {"containment": rep.to_dict()}
    return run


def suite_chudnovsky(field: Field, corpus: list[CorpusEntry], m_max: int = 4) -> SuiteSpec:
    """Degree growth of symbolic powers against the (alpha+N-1)/N bound."""
    rules = {"chudnovsky-bound": (frozenset({"N=2"}),)}
    cases: list[Case] = []
    for entry in corpus:
        if not entry.scheme.is_radical():
            continue
        cls = _classify(rules, "chudnovsky-bound", entry.tags)
        for m in range(1, m_max + 1):
            def run(ctx, fld, scheme=entry.scheme, m=m):
                sch = _rebuilt(scheme, fld)
                N = sch.N
                a1 = ctx.ideal(sch).alpha()
                am = ctx.symbolic(sch, m).alpha()
                lhs = Fraction(am, m)
                rhs = Fraction(a1 + N - 1, N)
                return lhs >= rhs, {"alpha": a1, "alpha_m": am, "m": m,
                                    "lhs": lhs, "rhs": rhs}
            cases.append(Case(f"chudnovsky|{entry.scheme_id}|m={m}", entry.scheme_id,
                              {"m": m}, cls, run))
    return SuiteSpec("chudnovsky", {"m_max": m_max}, [e.scheme_id for e in corpus], rules, cases)


def suite_tight_containment(field: Field, corpus: list[CorpusEntry], r_max: int = 3) -> SuiteSpec:
    """The rN-(N-1) relations: containment in I^r, the M-shifted variant, and
    the degree lower bound."""
    rules = {
        "symbolic-in-power": (frozenset({"star"}), frozenset({"ci"}),
                              frozenset({"general", "N=2"})),
        "symbolic-in-shifted-power": (frozenset({"star"}), frozenset({"ci"})),
        "alpha-lower-bound": (frozenset({"star"}), frozenset({"ci"})),
    }
    cases: list[Case] = []
    for entry in corpus:
        if not entry.scheme.is_radical():
            continue
        N = entry.scheme.N
        for r in range(1, r_max + 1):
            m = r * N - (N - 1)
            def build_plain(ctx, sch, fld, r=r, m=m):
                return ctx.power_of(sch, r), ctx.symbolic(sch, m)
            def build_shift(ctx, sch, fld, r=r, m=m, N=N):
                return ctx.shifted_power(sch, r, (r - 1) * (N - 1)), ctx.symbolic(sch, m)
            cases.append(_containment_case(
                f"tight|{entry.scheme_id}|in-power|r={r}", entry, {"r": r, "m": m},
                _classify(rules, "symbolic-in-power", entry.tags), build_plain))
            cases.append(_containment_case(
                f"tight|{entry.scheme_id}|in-shifted|r={r}", entry,
                {"r": r, "m": m, "j": (r - 1) * (N - 1)},
                _classify(rules, "symbolic-in-shifted-power", entry.tags), build_shift))

            def run_alpha(ctx, fld, scheme=entry.scheme, r=r, m=m, N=N):
                sch = _rebuilt(scheme, fld)
                a1 = ctx.ideal(sch).alpha()
                am = ctx.symbolic(sch, m).alpha()
                bound = r * a1 + (r - 1) * (N - 1)
                return am >= bound, {"alpha": a1, "alpha_m": am, "bound": bound, "m": m}
            cases.append(Case(f"tight|{entry.scheme_id}|alpha-bound|r={r}", entry.scheme_id,
                              {"r": r, "m": m},
                              _classify(rules, "alpha-lower-bound", entry.tags), run_alpha))
    return SuiteSpec("tight-containment", {"r_max": r_max},
                     [e.scheme_id for e in corpus], rules, cases)


def suite_alpha_ratio(field: Field, corpus: list[CorpusEntry], bound: int = 3) -> SuiteSpec:
    """Plane ratio conjecture: I^(m) inside I^r whenever m/r >= 2a/(a+1)."""
    rules = {"ratio-containment": (frozenset({"star"}), frozenset({"ci"}),
                                   frozenset({"general", "N=2"}))}
    cases: list[Case] = []
    for entry in corpus:
        if entry.scheme.N != 2 or not entry.scheme.is_radical():
            continue
        cls = _classify(rules, "ratio-containment", entry.tags)
        for r in range(1, bound + 1):
            for m in range(r, bound * 2 + 1):
                def run(ctx, fld, scheme=entry.scheme, m=m, r=r):
                    sch = _rebuilt(scheme, fld)
                    a1 = ctx.ideal(sch).alpha()
                    if m * (a1 + 1) < 2 * a1 * r:
                        return True, {"skipped": "ratio condition not met", "alpha": a1}
                    rep = contains(ctx.power_of(sch, r), ctx.symbolic(sch, m))
                    return rep.holds, {"alpha": a1, "containment": rep.to_dict()}
                cases.append(Case(f"alpha-ratio|{entry.scheme_id}|m={m}|r={r}",
                                  entry.scheme_id, {"m": m, "r": r}, cls, run))
    return SuiteSpec("alpha-ratio", {"bound": bound}, [e.scheme_id for e in corpus], rules, cases)


def suite_power_products(field: Field, corpus: list[CorpusEntry], m_max: int = 2,
                         k_max: int = 2, odd_r_max: int = 2) -> SuiteSpec:
    """Graded equality of symbolic-power products when alpha*beta = m^2 n, and
    the odd-power factorization for 5 general points."""
    rules = {
        "product-equality": (frozenset({"N=2", "radical"}),),
        "odd-factorization": (frozenset({"general-5"}),),
    }
    cases: list[Case] = []
    for entry in corpus:
        if entry.scheme.N != 2 or not entry.scheme.is_radical():
            continue
        cls = _classify(rules, "product-equality", entry.tags)
        for m in range(1, m_max + 1):
            def run(ctx, fld, scheme=entry.scheme, m=m, k_max=k_max):
                sch = _rebuilt(scheme, fld)
                n = sch.npoints
                am = ctx.symbolic(sch, m).alpha()
                bm = beta_of(ctx.symbolic(sch, m))
                evidence: dict = {"alpha_m": am, "beta_m": bm, "m": m, "n": n,
                                  "product": am * bm, "target": m * m * n}
                if am * bm != m * m * n:
                    evidence["applicable"] = False
                    return True, evidence
                evidence["applicable"] = True
                ok = True
                for k in range(2, k_max + 1):
                    span = power(ctx.symbolic(sch, m), k)
                    target = ctx.symbolic(sch, m * k)
                    fwd = contains(target, span)
                    bwd = contains(span, target)
                    evidence[f"equality-k{k}"] = _equality_evidence(fwd, bwd)
                    ok = ok and fwd.holds and bwd.holds
                return ok, evidence
            cases.append(Case(f"power-products|{entry.scheme_id}|m={m}", entry.scheme_id,
                              {"m": m, "k_max": k_max}, cls, run))
        if "general-5" in entry.tags:
            for r in range(1, odd_r_max + 1):
                def run_odd(ctx, fld, scheme=entry.scheme, r=r):
                    sch = _rebuilt(scheme, fld)
                    span = product(ctx.symbolic(sch, 2 * r), ctx.ideal(sch))
                    target = ctx.symbolic(sch, 2 * r + 1)
                    fwd = contains(target, span)
                    bwd = contains(span, target)
                    return fwd.holds and bwd.holds, _equality_evidence(fwd, bwd)
                cases.append(Case(f"power-products|{entry.scheme_id}|odd-r={r}",
                                  entry.scheme_id, {"r": r},
                                  _classify(rules, "odd-factorization", entry.tags), run_odd))
    return SuiteSpec("power-products", {"m_max": m_max, "k_max": k_max, "odd_r_max": odd_r_max},
                     [e.scheme_id for e in corpus], rules, cases)


def suite_gamma_refined(field: Field, corpus: list[CorpusEntry], m_max: int = 2,
                        t_max: int = 2) -> SuiteSpec:
    """Refined degree-growth bounds, the bracket consistency check, the star
    degree formula, the two shifted-product containment questions, and the
    characteristic-zero symbolic-square containment on the rationals corpus."""
    rules = {
        "bracket-consistency": (frozenset(),),
        "refined-plus-one": (frozenset({"rationals"}),),
        "refined-plus-N-minus-1": (frozenset({"star"}),),
        "star-alpha-formula": (frozenset({"star"}),),
        "shifted-product-Mt": (),
        "shifted-product-Mt-Nminus1": (),
        "symbolic-square-in-MI": (frozenset({"rationals"}),),
    }
    cases: list[Case] = []
    for entry in corpus:
        scheme = entry.scheme
        N = scheme.N
        if scheme.field.kind == "rationals":
            def run_euler(ctx, fld, scheme=scheme):
                rep = contains(shift_by_M(ctx.ideal(scheme), 1), ctx.symbolic(scheme, 2))
                return rep.holds, {"containment": rep.to_dict()}
            cases.append(Case(f"gamma-refined|{entry.scheme_id}|sym2-in-MI", entry.scheme_id,
                              {}, _classify(rules, "symbolic-square-in-MI", entry.tags),
                              run_euler))
            continue
        if not scheme.is_radical():
            continue

        def run_bracket(ctx, fld, scheme=scheme, m_max=m_max):
            sch = _rebuilt(scheme, fld)
            br = gamma_bracket(sch, m_max, ctx)
            return br.lower <= br.upper, {"bracket": br.to_dict()}
        cases.append(Case(f"gamma-refined|{entry.scheme_id}|bracket", entry.scheme_id,
                          {"m_max": m_max},
                          _classify(rules, "bracket-consistency", entry.tags), run_bracket))

        for m in range(1, m_max + 1):
            def run_refined(ctx, fld, scheme=scheme, m=m, m_max=m_max, N=N):
                sch = _rebuilt(scheme, fld)
                br = gamma_bracket(sch, m_max, ctx)
                am = br.alphas[m]
                lhs = Fraction(am + 1, m + N - 1)
                return lhs <= br.upper, {"alpha_m": am, "m": m, "lhs": lhs, "upper": br.upper}
            cases.append(Case(f"gamma-refined|{entry.scheme_id}|plus-one|m={m}",
                              entry.scheme_id, {"m": m},
                              _classify(rules, "refined-plus-one", entry.tags), run_refined))

            def run_question(ctx, fld, scheme=scheme, m=m, m_max=m_max, N=N):
                sch = _rebuilt(scheme, fld)
                br = gamma_bracket(sch, m_max, ctx)
                am = br.alphas[m]
                lhs = Fraction(am + N - 1, m + N - 1)
                return lhs <= br.upper, {"alpha_m": am, "m": m, "lhs": lhs, "upper": br.upper}
            cases.append(Case(f"gamma-refined|{entry.scheme_id}|plus-N-1|m={m}",
                              entry.scheme_id, {"m": m},
                              _classify(rules, "refined-plus-N-minus-1", entry.tags),
                              run_question))

        if "star" in entry.tags and scheme.provenance.get("kind") == "star":
            s = scheme.provenance["s"]
            for m in range(1, m_max + 1):
                def run_star_formula(ctx, fld, scheme=scheme, m=m, s=s, N=N):
                    sch = _rebuilt(scheme, fld)
                    am = ctx.symbolic(sch, m).alpha()
                    i, j = divmod(m - 1, N)
                    j += 1  # write m = N*i + j with 1 <= j <= N
                    expected = (i + 1) * s - N + j
                    return am == expected, {"alpha_m": am, "expected": expected, "m": m}
                cases.append(Case(f"gamma-refined|{entry.scheme_id}|star-formula|m={m}",
                                  entry.scheme_id, {"m": m, "s": s},
                                  _classify(rules, "star-alpha-formula", entry.tags),
                                  run_star_formula))

        for t in range(1, t_max + 1):
            for m in range(1, m_max + 1):
                def build_q2(ctx, sch, fld, t=t, m=m, N=N):
                    A = shift_by_M(power(ctx.symbolic(sch, m), t), t)
                    B = ctx.symbolic(sch, t * (m + N - 1))
                    return A, B
                cases.append(_containment_case(
                    f"gamma-refined|{entry.scheme_id}|shift-Mt|t={t}|m={m}", entry,
                    {"t": t, "m": m}, _classify(rules, "shifted-product-Mt", entry.tags),
                    build_q2))
                def build_q3(ctx, sch, fld, t=t, m=m, N=N):
                    A = shift_by_M(power(ctx.symbolic(sch, m), t), t * (N - 1))
                    B = ctx.symbolic(sch, t * (m + N - 1))
                    return A, B
                cases.append(_containment_case(
                    f"gamma-refined|{entry.scheme_id}|shift-MtN1|t={t}|m={m}", entry,
                    {"t": t, "m": m},
                    _classify(rules, "shifted-product-Mt-Nminus1", entry.tags), build_q3))
    return SuiteSpec("gamma-refined", {"m_max": m_max, "t_max": t_max},
                     [e.scheme_id for e in corpus], rules, cases)


# ---------------------------------------------------------------------------
# registry and default corpora
# ---------------------------------------------------------------------------

SUITE_IDS = ("conj-main", "chudnovsky", "tight-containment", "alpha-ratio",
             "power-products", "gamma-refined")


def default_corpus(suite_id: str, field: Field) -> list[CorpusEntry]:
    if suite_id == "conj-main":
        return (star_entries(field, 2, (4, 5, 6)) + star_entries(field, 3, (4, 5))
                + general_entries(field, range(5, 11), (11,))
                + exceptional_entries(field) + fat_probe_entries(field))
    if suite_id == "chudnovsky":
        return (star_entries(field, 2, (4, 5)) + star_entries(field, 3, (4,))
                + general_entries(field, range(1, 11), (11,)) + exceptional_entries(field))
    if suite_id in ("tight-containment", "alpha-ratio"):
        return (star_entries(field, 2, (4, 5)) + general_entries(field, range(1, 11), (11,))
                + exceptional_entries(field))
    if suite_id == "power-products":
        return star_entries(field, 2, (4, 5)) + general_entries(field, range(1, 10), (11,))
    if suite_id == "gamma-refined":
        return (star_entries(field, 2, (4, 5)) + star_entries(field, 3, (4,))
                + general_entries(field, range(5, 10), (11,))
                + exceptional_entries(field) + rational_entries())
    raise ValueError(f"unknown suite id {suite_id!r}")


def build_suite(suite_id: str, field: Field, corpus: list[CorpusEntry] | None = None,
                **params) -> SuiteSpec:
    if corpus is None:
        corpus = default_corpus(suite_id, field)
    if suite_id == "conj-main":
        return suite_conj_main(field, corpus, **params)
    if suite_id == "chudnovsky":
        return suite_chudnovsky(field, corpus, **params)
    if suite_id == "tight-containment":
        return suite_tight_containment(field, corpus, **params)
    if suite_id == "alpha-ratio":
        return suite_alpha_ratio(field, corpus, **params)
    if suite_id == "power-products":
        return suite_power_products(field, corpus, **params)
    if suite_id == "gamma-refined":
        return suite_gamma_refined(field, corpus, **params)
    raise ValueError(f"unknown suite id {suite_id!r}")
