"""Command-line surface.

Subcommands: alpha, beta, hilbert, regularity, gamma (invariant tables),
contains (one fully parameterized containment query), suite <id>.  Exit codes:
0 = all pass / containment holds, 1 = verified non-containment or a probe
counterexample candidate, 2 = error.

The reserved spec name "m-control" runs the conj-main negative control in
probe polarity: its containment is genuinely false, so the run exercises the
counterexample path (two-prime recheck, witness report, exit 1) end to end.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .cache import ENV_CACHE_DIR, ResultCache, cache_from_env
from .fields import DEFAULT_PRIME, PrimeField, RationalField
from .ideals import IdealContext, contains, power, shift_by_M
from .invariants import beta as beta_of
from .invariants import gamma_bracket
from .reports import ReportDocument, RunConfig, build_document, emit_report, jsonable
from .schemes import FatPointScheme
from .specfmt import parse_scheme_spec
from .suites import SUITE_IDS, CorpusEntry, build_suite, default_corpus, run_suite

_CI_COUNTS = {1, 2, 4}


def _parse_field(text: str):
    if text == "rationals":
        return RationalField()
    if text.startswith("prime"):
        _, _, p = text.partition(":")
        return PrimeField(int(p)) if p else PrimeField(DEFAULT_PRIME)
    raise ValueError(f"unknown field {text!r} (use 'prime[:p]' or 'rationals')")


def _entry_from_scheme(scheme: FatPointScheme) -> CorpusEntry:
    kind = scheme.provenance.get("kind", "explicit")
    tags = []
    if kind == "star":
        tags.append("star")
    elif kind == "general":
        tags.append("general")
        if scheme.npoints in _CI_COUNTS:
            tags.append("ci")
        if scheme.npoints == 3:
            tags.append("star")
        if scheme.npoints == 5:
            tags.append("general-5")
    else:
        tags.append("explicit")
    return CorpusEntry.make(scheme, *tags)


def _scheme_seeds(scheme: FatPointScheme) -> list[int]:
    seed = scheme.provenance.get("seed")
    return [seed] if seed is not None else []


def _corpus_seeds(corpus) -> list[int]:
    seeds = set()
    for entry in corpus:
        if entry.scheme is not None:
            seeds.update(_scheme_seeds(entry.scheme))
    return sorted(seeds)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fatpoints",
        description="Exact invariants and containment experiments for fat-point ideals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_spec=True):
        if needs_spec:
            p.add_argument("--spec", required=True, help="scheme-spec file")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--cache-dir", default=None,
                       help=f"result cache directory (or ${ENV_CACHE_DIR})")

    p_alpha = sub.add_parser("alpha", help="least degrees of symbolic powers")
    p_alpha.add_argument("--m-max", type=int, default=1)
    common(p_alpha)

    p_beta = sub.add_parser("beta", help="least degrees of certified coprime pairs (N=2)")
    p_beta.add_argument("--m-max", type=int, default=1)
    common(p_beta)

    p_hf = sub.add_parser("hilbert", help="Hilbert function table")
    p_hf.add_argument("--t-max", type=int, default=None)
    common(p_hf)

    p_reg = sub.add_parser("regularity", help="regularity of the scheme ideal")
    common(p_reg)

    p_gamma = sub.add_parser("gamma", help="exact rational degree-growth bracket")
    p_gamma.add_argument("--m-max", type=int, default=4)
    common(p_gamma)

    p_c = sub.add_parser("contains", help="decide I^(m) inside M^j I^r")
    p_c.add_argument("--m", type=int, required=True)
    p_c.add_argument("--j", type=int, default=0)
    p_c.add_argument("--r", type=int, default=1)
    common(p_c)

    p_s = sub.add_parser("suite", help="run a verification suite")
    p_s.add_argument("suite_id", choices=SUITE_IDS)
    p_s.add_argument("--spec", default=None,
                     help="scheme-spec file, or the reserved name 'm-control'")
    p_s.add_argument("--field", default="prime", help="field for built-in corpora")
    p_s.add_argument("--r-max", type=int, default=None)
    p_s.add_argument("--m-max", type=int, default=None)
    p_s.add_argument("--t-max", type=int, default=None)
    p_s.add_argument("--k-max", type=int, default=None)
    p_s.add_argument("--bound", type=int, default=None)
    p_s.add_argument("--no-recheck", action="store_true",
                     help="skip the fresh/second-prime recheck of probe failures")
    common(p_s, needs_spec=False)

    return parser


def _invariant_body(command: str, scheme: FatPointScheme, args, cache: ResultCache | None):
    ctx = IdealContext()
    sid = scheme.scheme_id()
    if command == "alpha":
        columns = ["scheme-id", "m", "alpha"]
        rows = []
        for m in range(1, args.m_max + 1):
            key = {"kind": "alpha", "scheme": scheme.content_key(), "m": m}
            val = cache.get(key) if cache else None
            if val is None:
                val = ctx.symbolic(scheme, m).alpha()
                if cache:
                    cache.put(key, val)
            rows.append({"scheme-id": sid, "m": m, "alpha": val})
        return {"columns": columns, "table": rows}
    if command == "beta":
        columns = ["scheme-id", "m", "alpha", "beta"]
        rows = []
        for m in range(1, args.m_max + 1):
            key = {"kind": "alpha-beta", "scheme": scheme.content_key(), "m": m}
            val = cache.get(key) if cache else None
            if val is None:
                handle = ctx.symbolic(scheme, m)
                val = {"alpha": handle.alpha(), "beta": beta_of(handle)}
                if cache:
                    cache.put(key, val)
            rows.append({"scheme-id": sid, "m": m, **val})
        return {"columns": columns, "table": rows}
    if command == "hilbert":
        handle = ctx.ideal(scheme)
        t_max = args.t_max if args.t_max is not None else handle.regularity()
        columns = ["scheme-id", "t", "hilbert"]
        rows = [
            {"scheme-id": sid, "t": t, "hilbert": handle.hilbert_function(t)}
            for t in range(t_max + 1)
        ]
        return {"columns": columns, "table": rows, "degree": scheme.degree()}
    if command == "regularity":
        key = {"kind": "regularity", "scheme": scheme.content_key()}
        val = cache.get(key) if cache else None
        if val is None:
            val = ctx.ideal(scheme).regularity()
            if cache:
                cache.put(key, val)
        return {
            "columns": ["scheme-id", "regularity", "degree"],
            "table": [{"scheme-id": sid, "regularity": val, "degree": scheme.degree()}],
        }
    if command == "gamma":
        bracket = gamma_bracket(scheme, args.m_max, ctx)
        columns = [
            "scheme-id", "m", "alpha",
            "gamma-lower-num", "gamma-lower-den", "gamma-upper-num", "gamma-upper-den",
        ]
        rows = [
            {
                "scheme-id": sid,
                "m": m,
                "alpha": bracket.alphas[m],
                "gamma-lower-num": bracket.lower.numerator,
                "gamma-lower-den": bracket.lower.denominator,
                "gamma-upper-num": bracket.upper.numerator,
                "gamma-upper-den": bracket.upper.denominator,
            }
            for m in sorted(bracket.alphas)
        ]
        return {"columns": columns, "table": rows, "bracket": bracket.to_dict()}
    raise ValueError(command)


def run_command(args) -> tuple[ReportDocument, int]:
    cache = cache_from_env(args.cache_dir)
    if args.command in ("alpha", "beta", "hilbert", "regularity", "gamma"):
        scheme, field = parse_scheme_spec(Path(args.spec).read_text())
        params = {k: v for k, v in vars(args).items()
                  if k in ("m_max", "t_max") and v is not None}
        config = RunConfig(args.command, spec=args.spec, field_config=field.config(),
                           params=params, seeds=_scheme_seeds(scheme),
                           output=args.out, fmt=args.format, cache_dir=args.cache_dir)
        body = _invariant_body(args.command, scheme, args, cache)
        return build_document(config, body, 0), 0
    if args.command == "contains":
        scheme, field = parse_scheme_spec(Path(args.spec).read_text())
        params = {"m": args.m, "j": args.j, "r": args.r}
        config = RunConfig("contains", spec=args.spec, field_config=field.config(),
                           params=params, seeds=_scheme_seeds(scheme),
                           output=args.out, fmt=args.format, cache_dir=args.cache_dir)
        key = {"kind": "contains", "scheme": scheme.content_key(), **params}
        rep_dict = cache.get(key) if cache else None
        if rep_dict is None:
            ctx = IdealContext()
            A = shift_by_M(ctx.power_of(scheme, args.r), args.j)
            B = ctx.symbolic(scheme, args.m)
            rep_dict = jsonable(contains(A, B).to_dict())
            if cache:
                cache.put(key, rep_dict)
        exit_code = 0 if rep_dict["holds"] else 1
        body = {"query": params, "containment": rep_dict}
        return build_document(config, body, exit_code), exit_code
    if args.command == "suite":
        field = _parse_field(args.field)
        params = {}
        for name in ("r_max", "m_max", "t_max", "k_max", "bound"):
            value = getattr(args, name)
            if value is not None:
                params[name] = value
        if args.spec and args.spec.lower() == "m-control":
            if args.suite_id != "conj-main":
                raise ValueError("the reserved spec 'm-control' applies to the conj-main suite")
            corpus: list[CorpusEntry] = []
            spec = build_suite("conj-main", field, corpus, control_polarity="probe",
                               **{k: v for k, v in params.items() if k == "r_max"})
        elif args.spec:
            scheme, field = parse_scheme_spec(Path(args.spec).read_text())
            corpus = [_entry_from_scheme(scheme)]
            spec = build_suite(args.suite_id, field, corpus, **params)
        else:
            corpus = default_corpus(args.suite_id, field)
            spec = build_suite(args.suite_id, field, corpus, **params)
        config = RunConfig(f"suite {args.suite_id}", spec=args.spec,
                           field_config=field.config(), params=params,
                           seeds=_corpus_seeds(corpus), output=args.out,
                           fmt=args.format, cache_dir=args.cache_dir)
        verdict = run_suite(spec, field, recheck=not args.no_recheck, cache=cache)
        body = verdict.to_dict()
        return build_document(config, body, verdict.exit_code), verdict.exit_code
    raise ValueError(f"unknown command {args.command!r}")


def main(argv=None) -> None:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc, exit_code = run_command(args)
    except Exception as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        sys.exit(2)
    payload = emit_report(doc, args.format)
    if args.out:
        Path(args.out).write_bytes(payload)
    else:
        sys.stdout.buffer.write(payload)
    sys.exit(exit_code)


if __name__ == "__main__":
    main()
