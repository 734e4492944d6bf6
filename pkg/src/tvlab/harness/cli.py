"""Command-line interface.

Exit codes: 0 holds/found/pass, 1 refuted/not found/inconclusive,
2 theorem violation, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from tvlab.complexes import SimplicialComplex, homological_connectivity, matroidal_join_discrete, reduced_homology
from tvlab.harness.fleet import builtin_fleet
from tvlab.harness.serialize import InstanceSpec, SpecError, to_plain
from tvlab.harness.suites import SUITES, SuiteConfig, _instance_for, run_suite
from tvlab.hypotheses import (
    HypothesisError,
    Verdict,
    check_c1,
    check_colorful_helly,
    check_holmsen,
    check_matroid_intersections,
    check_models_dependencies,
)
from tvlab.matroid import MatroidError, matroid_from_spec, matroid_to_spec
from tvlab.transversal import Budget, Status, best_finder, find_k_flat_heuristic, verify_theorem_conclusion

EXIT_OK, EXIT_NEGATIVE, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        out = json.dumps(to_plain(payload), indent=1, sort_keys=True)
    else:
        out = "\n".join(text_lines)
    if args.output and args.command not in ("generate",):
        Path(args.output).write_text(out + "\n")
    else:
        print(out)


def _load_instance(path: str) -> InstanceSpec:
    return InstanceSpec.load(path)


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def cmd_generate(args) -> int:
    out = Path(args.out or args.output or ".")
    out.mkdir(parents=True, exist_ok=True)
    written = []
    if args.suite == "topology":
        for name, m in builtin_fleet():
            path = out / f"matroid-{name.replace(' ', '')}.json"
            path.write_text(json.dumps(matroid_to_spec(m), sort_keys=True) + "\n")
            written.append(str(path))
    else:
        cfg = SuiteConfig(args.suite, variant=args.variant)
        for seed in range(args.seed, args.seed + args.count):
            spec, _ = _instance_for(cfg, seed)
            path = out / f"{args.suite}-{seed}.json"
            spec.save(path)
            written.append(str(path))
    _emit(args, {"written": written}, written)
    return EXIT_OK


CHECKS = {
    "helly": lambda inst, a: check_colorful_helly(inst),
    "matroid": lambda inst, a: check_matroid_intersections(inst),
    "holmsen": lambda inst, a: check_holmsen(inst),
    "models-deps": lambda inst, a: check_models_dependencies(inst, samples=a.samples, seed=a.seed),
    "c1": lambda inst, a: check_c1(inst),
}


def cmd_check(args) -> int:
    spec = _load_instance(args.instance)
    rep = CHECKS[args.condition](spec.instance, args)
    payload = {
        "condition": rep.condition,
        "verdict": rep.verdict.value,
        "seed": rep.seed,
        "lp_calls": rep.n_lp,
        "witness": rep.witness.__dict__ if hasattr(rep.witness, "__dict__") else rep.witness,
        "certificate": rep.certificate.multipliers if rep.certificate else None,
        "details": rep.details,
    }
    lines = [rep.summary()]
    if rep.verdict is Verdict.REFUTED:
        lines.append(f"witness: {to_plain(payload['witness'])}")
    _emit(args, payload, lines)
    return EXIT_NEGATIVE if rep.verdict is Verdict.REFUTED else EXIT_OK


def _parse_ints(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {text!r}") from exc


def cmd_find(args) -> int:
    inst = _load_instance(args.instance).instance
    finder = best_finder(inst)
    subset = _parse_ints(args.subset)
    if finder is find_k_flat_heuristic:
        res = finder(inst, subset, Budget(restarts=args.budget, seed=args.seed))
    else:
        res = finder(inst, subset)
    payload = {
        "status": res.status.value,
        "method": res.method,
        "subset": res.subset,
        "flat": res.flat,
        "witnesses": res.witnesses,
        "core": res.core,
    }
    lines = [f"{res.status.value} ({res.method}) on {list(res.subset)}"]
    if res.flat is not None:
        lines.append(f"flat: base {to_plain(res.flat.base)} directions {to_plain(res.flat.directions)}")
    if res.core:
        lines.append(f"no transversal already for {list(res.core)}")
    _emit(args, payload, lines)
    return EXIT_OK if res.status is Status.FOUND else EXIT_NEGATIVE


def cmd_verify(args) -> int:
    inst = _load_instance(args.instance).instance
    rep = verify_theorem_conclusion(inst, budget=Budget(restarts=args.budget, seed=args.seed))
    payload = {k: v for k, v in rep.__dict__.items()}
    lines = [f"{rep.outcome}: bound {rep.bound}"]
    if rep.outcome == "pass":
        lines.append(f"removed {list(rep.removed)} (rank {rep.rank_removed}), kept {list(rep.subfamily)}")
        if rep.color is not None:
            lines.append(f"color class {rep.color} has a transversal")
    _emit(args, payload, lines)
    return {"pass": EXIT_OK, "inconclusive": EXIT_NEGATIVE, "fail": EXIT_VIOLATION}[rep.outcome]


def cmd_topology(args) -> int:
    m = matroid_from_spec(_load_json(args.matroid))
    sizes = _parse_ints(args.sizes) or [1] * len(m.ground)
    join = matroidal_join_discrete(m, sizes)
    prof = reduced_homology(join)
    conn = homological_connectivity(join, prof)
    bound = m.rank() - 2
    payload = {"f_vector": prof.f_vector, "betti": prof.betti, "torsion": prof.torsion, "connectivity": conn, "rank": m.rank(), "bound": bound}
    lines = [f"join of {len(join.vertices)} vertices, {len(join.facets)} facets, dim {join.dim}", *prof.describe(), f"connectivity {conn} (rank - 2 = {bound})"]
    _emit(args, payload, lines)
    return EXIT_OK if conn >= bound else EXIT_VIOLATION


def cmd_homology(args) -> int:
    try:
        k = SimplicialComplex.from_json(_load_json(args.complex))
    except (KeyError, TypeError) as exc:
        raise InputError(f"complex file needs 'facets': {exc}") from exc
    prof = reduced_homology(k)
    payload = {"f_vector": prof.f_vector, "betti": prof.betti, "torsion": prof.torsion, "connectivity": homological_connectivity(k, prof)}
    _emit(args, payload, [f"f-vector {prof.f_vector}", *prof.describe()])
    return EXIT_OK


def cmd_run(args) -> int:
    seeds = list(range(args.seed, args.seed + args.count))
    cfg = SuiteConfig(args.suite, seeds, variant=args.variant, samples=args.samples, jobs=args.jobs, budget=Budget(restarts=args.budget, seed=args.seed))
    if args.suite == "topology":
        cfg.seeds = []
    report = run_suite(cfg)
    if args.output:
        report.write_jsonl(args.output)
    if args.format == "json":
        if not args.output:
            print("\n".join(report.lines()))
    else:
        s = report.summary
        print(f"{args.suite}: {s['instances']} records, outcomes {s['outcomes']}, violations {s['violations']}")
        print(f"LP calls {s['lp']['calls']}, certificates validated {s['lp']['certificates_validated']}, failures {s['lp']['validation_failures']}")
    return EXIT_VIOLATION if report.violations else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--seed", type=int, default=0, help="base seed")
    common.add_argument("--output", help="write the result to this file")
    common.add_argument("--format", choices=("json", "text"), default="text")

    p = argparse.ArgumentParser(prog="tvlab", description="Exact checks for colorful and matroidal transversal theorems.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common], help="write generated instances")
    g.add_argument("--suite", choices=SUITES, required=True)
    g.add_argument("--out", help="output directory")
    g.add_argument("--count", type=int, default=1)
    g.add_argument("--variant", choices=("a", "b", "c"), default="a")
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("check", parents=[common], help="check a theorem premise")
    c.add_argument("--instance", required=True)
    c.add_argument("--condition", choices=sorted(CHECKS), required=True)
    c.add_argument("--samples", type=int, default=8)
    c.set_defaults(func=cmd_check)

    f = sub.add_parser("find", parents=[common], help="search for a k-flat transversal")
    f.add_argument("--instance", required=True)
    f.add_argument("--subset", help="comma-separated set indices")
    f.add_argument("--budget", type=int, default=8, help="restarts of the float search")
    f.set_defaults(func=cmd_find)

    v = sub.add_parser("verify-theorem", parents=[common], help="verify the theorem conclusion")
    v.add_argument("--instance", required=True)
    v.add_argument("--budget", type=int, default=8)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("topology", parents=[common], help="homology of a discrete matroidal join")
    t.add_argument("--matroid", required=True)
    t.add_argument("--sizes", help="comma-separated fibre sizes")
    t.set_defaults(func=cmd_topology)

    h = sub.add_parser("homology", parents=[common], help="reduced integral homology of a complex")
    h.add_argument("--complex", required=True)
    h.set_defaults(func=cmd_homology)

    r = sub.add_parser("run", parents=[common], help="run an experiment suite")
    r.add_argument("--suite", choices=SUITES, required=True)
    r.add_argument("--count", type=int, default=10)
    r.add_argument("--variant", choices=("a", "b", "c"), default="a")
    r.add_argument("--samples", type=int, default=4)
    r.add_argument("--budget", type=int, default=8)
    r.set_defaults(func=cmd_run)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, SpecError, HypothesisError, MatroidError, ValueError, OSError) as exc:
        print(f"tvlab: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
