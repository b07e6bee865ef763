"""Command-line interface.

Exit codes: 0 success, 1 domain error (invalid input, frame mismatch, ...),
2 usage error, 3 a self-check suite reported a failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from . import conflict as cf
from . import experiments as ex
from .alpha import ALPHA_FAMILIES, from_alpha, to_alpha
from .errors import BeliefError
from .frame import MassFunction, frame_of_size, make_frame, members_of, to_bits
from .fusion import export_matrix_csv, generalization_matrix, save_matrix, specialization_matrix
from .io import dumps, mass_from_dict, mass_to_dict, setfunction_from_dict, setfunction_to_dict
from .metrics import INF, DistanceSpec, distance, parse_k
from .random_gen import KINDS, RNG_ALGORITHM, RNG_VERSION, GenSpec, make_rng, random_masses
from .transforms import FAMILIES, mass_of, to_family

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_SUITE = 0, 1, 2, 3
KERNEL_VERSION = 1

RULE_ALIASES = {
    "conj": "conjunctive",
    "conjunctive": "conjunctive",
    "disj": "disjunctive",
    "disjunctive": "disjunctive",
    "alpha-conj": "alpha-conjunctive",
    "alpha-conjunctive": "alpha-conjunctive",
    "alpha-disj": "alpha-disjunctive",
    "alpha-disjunctive": "alpha-disjunctive",
}


class InputError(BeliefError):
    code = "input_error"


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _read_mass(path: str, renormalize: bool) -> MassFunction:
    data = _read_json(path)
    try:
        return mass_from_dict(data, renormalize=renormalize)
    except (KeyError, TypeError) as exc:
        raise InputError(f"{path} is not a mass-function document ({exc})") from None


def _emit(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(out).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")


def _subset_label(frame, mask: int) -> str:
    return f"{to_bits(frame, mask)} {{{','.join(members_of(frame, mask))}}}"


def _human_vector(frame, values, skip_zero: bool) -> str:
    lines = []
    for a, v in enumerate(values):
        if skip_zero and v == 0.0:
            continue
        lines.append(f"{_subset_label(frame, a):<{frame.n + 4 + 2 * frame.n}} {float(v)!r}")
    return "\n".join(lines)


def _distance_spec(args) -> DistanceSpec:
    return DistanceSpec(args.family, args.k, getattr(args, "alpha", None))


def _n_mix(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError("n-mix needs positive frame sizes")
    return values


def _k_arg(text: str):
    try:
        return parse_k(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rule_arg(text: str) -> str:
    if text not in RULE_ALIASES:
        raise argparse.ArgumentTypeError(f"unknown rule {text!r}; choose from {sorted(RULE_ALIASES)}")
    return RULE_ALIASES[text]


# Subcommands.

def cmd_generate(args) -> int:
    frame = make_frame(args.labels.split(",")) if args.labels else frame_of_size(args.n)
    spec = GenSpec(args.kind, allow_empty_focal=args.allow_empty, max_focal=args.max_focal)
    masses = random_masses(frame, make_rng(args.seed), spec, args.count)
    docs = [mass_to_dict(m) for m in masses]
    # a single draw is written bare so the other subcommands can read it
    _emit(dumps(docs[0] if args.count == 1 else docs), args.out)
    return EXIT_OK


def cmd_transform(args) -> int:
    if args.inverse:
        data = _read_json(args.file)
        try:
            f = setfunction_from_dict(data)
        except (KeyError, TypeError) as exc:
            raise InputError(f"{args.file} is not a set-function document ({exc})") from None
        m = from_alpha(f) if f.family in ALPHA_FAMILIES else mass_of(f)
        _emit(_human_vector(m.frame, m.values, True) if args.human else dumps(mass_to_dict(m)), args.out)
        return EXIT_OK
    if args.to is None:
        raise InputError("transform needs --to FAMILY or --inverse")
    m = _read_mass(args.file, args.renormalize)
    if args.to in ALPHA_FAMILIES:
        if args.alpha is None:
            raise InputError(f"--to {args.to} needs --alpha")
        f = to_alpha(m, args.alpha, args.to)
    else:
        f = to_family(m, args.to)
    _emit(_human_vector(f.frame, f.values, False) if args.human else dumps(setfunction_to_dict(f)), args.out)
    return EXIT_OK


def cmd_combine(args) -> int:
    masses = [_read_mass(p, args.renormalize) for p in args.files]
    if args.rule.startswith("alpha") and args.alpha is None:
        raise InputError(f"rule {args.rule} needs --alpha")
    out = masses[0]
    for m in masses[1:]:
        out = ex.combine(args.rule, out, m, args.alpha)
    _emit(_human_vector(out.frame, out.values, True) if args.human else dumps(mass_to_dict(out)), args.out)
    return EXIT_OK


def cmd_distance(args) -> int:
    m1 = _read_mass(args.file1, args.renormalize)
    m2 = _read_mass(args.file2, args.renormalize)
    _emit(repr(distance(m1, m2, _distance_spec(args))), None)
    return EXIT_OK


def cmd_conflict(args) -> int:
    m1 = _read_mass(args.file1, args.renormalize)
    m2 = _read_mass(args.file2, args.renormalize) if args.file2 else None
    spec = None
    if args.degree == "C":
        if args.family is None:
            raise InputError("degree C needs --family")
        spec = _distance_spec(args)
    inputs = [args.file1] + ([args.file2] if args.file2 else [])
    report = cf.conflict_report(args.degree, m1, m2, spec, inputs)
    _emit(dumps(report.to_dict()), None)
    return EXIT_OK


def cmd_matrix(args) -> int:
    m = _read_mass(args.file, args.renormalize)
    mat = specialization_matrix(m) if args.kind == "spe" else generalization_matrix(m)
    if args.out is None and args.csv is None:
        raise InputError("matrix needs --out and/or --csv")
    if args.out:
        save_matrix(mat, args.out)
    if args.csv:
        export_matrix_csv(mat, args.csv)
    return EXIT_OK


def _experiment_config(args, distances=ex.TABLE_DISTANCES) -> ex.ExperimentConfig:
    gen = GenSpec(args.kind, allow_empty_focal=args.allow_empty)
    return ex.ExperimentConfig(
        rule=args.rule, trials=args.trials, seed=args.seed, n_mix=args.n_mix, alpha=args.alpha,
        distances=distances, generator=gen, slack=args.slack, jobs=args.jobs,
    )


def _print_checks(checks: list[ex.Check]):
    for c in checks:
        print(f"{'PASS' if c.ok else 'FAIL'}  {c.name}: expected {c.expected}, got {c.actual!r}")


def cmd_experiment_table(args) -> int:
    distances = ex.TABLE_DISTANCES
    if args.rule.startswith("alpha"):
        family = "aq" if args.rule == "alpha-conjunctive" else "ab"
        distances = tuple(DistanceSpec(family, k, args.alpha) for k in (1, 2, INF))
    report = ex.run_consistency_table(_experiment_config(args, distances))
    _emit(report.to_csv(), args.out)
    if args.json:
        _emit(ex.report_json(report.to_dict()), args.json)
    if args.gnuplot:
        _emit(report.to_gnuplot(), args.gnuplot)
    if args.check:
        checks = ex.qualitative_check(report)
        for c in checks:
            print(f"{'PASS' if c.ok else 'FAIL'}  {c.name}: {c.expected}, got {c.actual!r}", file=sys.stderr)
        if not all(c.ok for c in checks):
            return EXIT_SUITE
    return EXIT_OK


def cmd_experiment_counterexamples(args) -> int:
    report = ex.counterexample_suite()
    if args.json:
        _emit(ex.report_json(report.to_dict()), None)
    else:
        _print_checks(report.checks)
        print(f"{'PASS' if report.ok else 'FAIL'}  {len(report.checks)} checks in {report.wall_time:.3f} s")
    return EXIT_OK if report.ok else EXIT_SUITE


def cmd_experiment_conflict(args) -> int:
    cfg = ex.ExperimentConfig(trials=args.trials, seed=args.seed, n_mix=args.n_mix,
                              generator=GenSpec("general", allow_empty_focal=True))
    report = ex.conflict_property_suite(_distance_spec(args), cfg)
    if args.json:
        _emit(ex.report_json(report.to_dict()), None)
    else:
        for p in report.properties:
            status = "n/a " if p.passed is None else ("PASS" if p.passed else "FAIL")
            claim = {True: "holds", False: "fails", None: "no claim"}[p.expected]
            verdict = "" if p.as_expected else "  <-- unexpected"
            print(f"{status}  {p.name} [theory: {claim}] {p.detail}{verdict}")
    return EXIT_OK if report.ok else EXIT_SUITE


def cmd_experiment_exhaustive(args) -> int:
    spec = _distance_spec(args)
    report = ex.exhaustive_check(spec, args.rule, args.corpus, args.n, args.step, args.alpha)
    print(ex.report_json(report.to_dict()))
    proven = spec in ex.PROVEN.get(args.rule, ())
    return EXIT_SUITE if proven and report.violations else EXIT_OK


def cmd_experiment_propositions(args) -> int:
    reports = ex.proposition_suite(trials=args.trials, seed=args.seed, n_mix=args.n_mix)
    ok = True
    for rule, report in reports.items():
        for r in report.results:
            ok &= r.successes == r.trials
            print(f"{'PASS' if r.successes == r.trials else 'FAIL'}  {rule} {r.spec.name}: "
                  f"{r.trials - r.successes} violations, max excess {r.max_violation!r}")
    return EXIT_OK if ok else EXIT_SUITE


def cmd_experiment_alpha(args) -> int:
    reports = ex.alpha_suite(trials=args.trials, seed=args.seed)
    ok = True
    for (alpha, rule), report in reports.items():
        for r in report.results:
            ok &= r.successes == r.trials
            print(f"{'PASS' if r.successes == r.trials else 'FAIL'}  alpha={alpha:g} {rule} {r.spec.name}: "
                  f"{r.trials - r.successes} violations")
    return EXIT_OK if ok else EXIT_SUITE


# Parser.

def _add_renormalize(p):
    p.add_argument("--renormalize", action="store_true",
                   help="rescale inputs whose masses sum to within 1e-3 of 1")


def _add_distance_flags(p, required=True):
    fams = FAMILIES + ("spe", "jousselme") + ALPHA_FAMILIES
    p.add_argument("--family", choices=fams, required=required)
    p.add_argument("--k", type=_k_arg, default=1, help="norm order: positive integer or 'inf'")
    p.add_argument("--alpha", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    version = (f"beliefkit {__version__} (kernel {KERNEL_VERSION}; rng {RNG_ALGORITHM} v{RNG_VERSION}; "
               f"numpy {np.__version__})")
    parser = argparse.ArgumentParser(prog="beliefkit", description="Belief-function transforms, rules and distances.")
    parser.add_argument("--version", action="version", version=version)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="draw random mass functions")
    p.add_argument("--kind", choices=KINDS, default="simple")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--labels", help="comma-separated labels (overrides --n)")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--allow-empty", action="store_true")
    p.add_argument("--max-focal", type=int, default=None)
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("transform", help="mass function to set function, or back with --inverse")
    p.add_argument("--to", choices=FAMILIES + ALPHA_FAMILIES)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--human", action="store_true", help="table with binary strings and labels")
    p.add_argument("--out", "-o")
    _add_renormalize(p)
    p.add_argument("file")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("combine", help="combine two or more mass functions")
    p.add_argument("--rule", type=_rule_arg, required=True)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--human", action="store_true")
    p.add_argument("--out", "-o")
    _add_renormalize(p)
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_combine)

    p = sub.add_parser("distance", help="distance between two mass functions")
    _add_distance_flags(p)
    _add_renormalize(p)
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("conflict", help="degree of conflict or consistency")
    p.add_argument("--degree", choices=cf.DEGREES, required=True)
    _add_distance_flags(p, required=False)
    _add_renormalize(p)
    p.add_argument("file1")
    p.add_argument("file2", nargs="?")
    p.set_defaults(func=cmd_conflict)

    p = sub.add_parser("matrix", help="specialization or generalization matrix")
    p.add_argument("--kind", choices=("spe", "gen"), default="spe")
    p.add_argument("--out", help="binary matrix file (JSON header line + float64 data)")
    p.add_argument("--csv", help="CSV export")
    _add_renormalize(p)
    p.add_argument("file")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("experiment", help="consistency experiments and self-checks")
    esub = p.add_subparsers(dest="experiment", required=True)

    def add_run_flags(q, trials=10_000, seed=42):
        q.add_argument("--trials", type=int, default=trials)
        q.add_argument("--seed", type=int, default=seed)
        q.add_argument("--n-mix", type=_n_mix, default=(3, 4, 5, 6))

    q = esub.add_parser("table", help="consistency rates of the table distances")
    q.add_argument("--rule", type=_rule_arg, default="conjunctive")
    q.add_argument("--alpha", type=float, default=None)
    add_run_flags(q)
    q.add_argument("--kind", choices=KINDS, default="simple")
    q.add_argument("--allow-empty", action="store_true")
    q.add_argument("--slack", type=float, default=1e-12)
    q.add_argument("--jobs", type=int, default=1)
    q.add_argument("--out", "-o", help="CSV report (default stdout)")
    q.add_argument("--json", help="JSON report with witnesses")
    q.add_argument("--gnuplot", help="gnuplot data file")
    q.add_argument("--check", action="store_true", help="exit 3 unless the reported 100%%/<100%% pattern holds")
    q.set_defaults(func=cmd_experiment_table)

    q = esub.add_parser("counterexamples", help="rebuild both worked counter-examples")
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_experiment_counterexamples)

    q = esub.add_parser("conflict", help="property suite for a distance-based degree of conflict")
    _add_distance_flags(q)
    add_run_flags(q)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_experiment_conflict)

    q = esub.add_parser("exhaustive", help="check every triplet of a small corpus")
    _add_distance_flags(q)
    q.add_argument("--rule", type=_rule_arg, default="conjunctive")
    q.add_argument("--corpus", choices=("categorical", "grid", "all"), default="categorical")
    q.add_argument("--n", type=int, default=3)
    q.add_argument("--step", type=float, default=0.5)
    q.set_defaults(func=cmd_experiment_exhaustive)

    q = esub.add_parser("propositions", help="Monte Carlo check of every proven (distance, rule) pair")
    add_run_flags(q, seed=7)
    q.set_defaults(func=cmd_experiment_propositions, n_mix=(3, 4, 5, 6, 7, 8))

    q = esub.add_parser("alpha", help="alpha-junction consistency checks")
    q.add_argument("--trials", type=int, default=1000)
    q.add_argument("--seed", type=int, default=11)
    q.set_defaults(func=cmd_experiment_alpha)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BeliefError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except KeyError as exc:
        print(f"error [{type(exc).__name__}]: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
