"""Experiment suites: generate, check the premise, verify the conclusion.

A suite run yields one record per instance (or per matroid for the
topology suite) in input order, whatever the number of worker processes.
"""

from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

from tvlab import __version__
from tvlab.complexes import homological_connectivity, independence_complex, matroidal_join_discrete, reduced_homology
from tvlab.core import Field
from tvlab.geometry import lp_stats
from tvlab.harness.fleet import builtin_fleet, size_vector_orbits
from tvlab.harness.generators import (
    ColorfulParams,
    HolmsenParams,
    PiercedParams,
    generate_colorful_instance,
    generate_holmsen_instance,
    generate_kalai_meshulam_instance,
    generate_pierced_instance,
)
from tvlab.harness.serialize import InstanceSpec, to_plain
from tvlab.hypotheses import Verdict, check_c1, check_colorful_helly, check_holmsen, check_matroid_intersections, check_models_dependencies
from tvlab.matroid import parallel_extension, verify_matroid_axioms
from tvlab.transversal import Budget, verify_theorem_conclusion

SUITES = ("helly", "kalai-meshulam", "holmsen", "main-theorem", "topology", "c1")

MAIN_VARIANTS = {
    "a": PiercedParams(Field.R, 2, 1, 1, 6),
    "b": PiercedParams(Field.R, 3, 1, 1, 6),
    "c": PiercedParams(Field.C, 1, 0, 0, 5),
}


@dataclass
class SuiteConfig:
    suite: str
    seeds: list[int] = field(default_factory=list)
    variant: str = "a"  # main-theorem only
    samples: int = 4
    check_hypothesis: bool = True
    jobs: int = 1
    budget: Budget = Budget()

    def to_json(self) -> dict:
        out = asdict(self)
        out.pop("jobs")
        return out


@dataclass
class RunReport:
    config: dict
    records: list[dict] = field(default_factory=list)
    version: str = __version__

    @property
    def summary(self) -> dict:
        outcomes: dict[str, int] = {}
        for r in self.records:
            outcomes[r["outcome"]] = outcomes.get(r["outcome"], 0) + 1
        lp = {"calls": 0, "infeasible": 0, "certificates_validated": 0, "validation_failures": 0}
        for r in self.records:
            for k in lp:
                lp[k] += r.get("lp", {}).get(k, 0)
        return {"instances": len(self.records), "outcomes": outcomes, "violations": self.violations, "lp": lp}

    @property
    def violations(self) -> int:
        return sum(1 for r in self.records if r.get("violation"))

    def lines(self, with_timings: bool = True) -> list[str]:
        out = [json.dumps({"run": {"config": self.config, "version": self.version}}, sort_keys=True)]
        for r in self.records:
            rec = dict(r) if with_timings else {k: v for k, v in r.items() if k != "timings"}
            out.append(json.dumps(rec, sort_keys=True))
        out.append(json.dumps({"summary": self.summary}, sort_keys=True))
        return out

    def body(self) -> str:
        """Report text without timings (identical for identical configs)."""
        return "\n".join(self.lines(with_timings=False))

    def write_jsonl(self, path: str | Path, append: bool = False) -> None:
        with open(path, "a" if append else "w") as fh:
            for line in self.lines():
                fh.write(line + "\n")


def digest(obj) -> str:
    return hashlib.sha256(json.dumps(to_plain(obj), sort_keys=True).encode()).hexdigest()[:16]


def _lp_delta(before: dict) -> dict:
    after = lp_stats()
    return {k: after[k] - before[k] for k in ("calls", "infeasible", "certificates_validated", "validation_failures")}


def _conclusion_fields(rep) -> dict:
    return {
        "conclusion": rep.outcome,
        "bound": rep.bound,
        "removed": list(rep.removed) if rep.removed is not None else None,
        "rank_removed": rep.rank_removed,
        "color": rep.color,
        "method": rep.method,
        "flat_digest": digest(rep.flat) if rep.flat is not None else None,
    }


def _instance_for(cfg: SuiteConfig, seed: int) -> tuple[InstanceSpec, Any]:
    if cfg.suite == "helly":
        d = 1 + seed % 2
        spec = generate_colorful_instance(seed, ColorfulParams(d=d, sets_per_class=2 + seed % 3))
        return spec, check_colorful_helly
    if cfg.suite == "kalai-meshulam":
        return generate_kalai_meshulam_instance(seed), check_matroid_intersections
    if cfg.suite == "holmsen":
        return generate_holmsen_instance(seed, HolmsenParams(r=seed % 2)), check_holmsen
    if cfg.suite == "main-theorem":
        spec = generate_pierced_instance(seed, MAIN_VARIANTS[cfg.variant])
        return spec, lambda inst: check_models_dependencies(inst, samples=cfg.samples, seed=seed)
    if cfg.suite == "c1":
        return generate_pierced_instance(seed, PiercedParams(Field.R, 2, 1, 0, 4)), check_c1
    raise ValueError(f"unknown suite {cfg.suite!r}")


def run_instance(cfg: SuiteConfig, seed: int) -> dict:
    t0 = time.perf_counter()
    before = lp_stats()
    spec, checker = _instance_for(cfg, seed)
    inst = spec.instance
    t1 = time.perf_counter()
    rec: dict[str, Any] = {"suite": cfg.suite, "seed": seed, "id": f"{cfg.suite}-{seed}", "n": inst.n}
    hyp = checker(inst) if cfg.check_hypothesis else None
    t2 = time.perf_counter()
    rec["hypothesis"] = hyp.verdict.value if hyp is not None else "SKIPPED"
    if hyp is not None and hyp.condition == "models-deps":
        rec["max_kernel_dim"] = max((e["kernel_dim"] for e in hyp.details), default=0)
    if hyp is not None and hyp.verdict is Verdict.REFUTED:
        rec["hypothesis_witness"] = digest(hyp.witness)
    if cfg.suite == "c1":
        rec["outcome"] = "holds" if hyp.holds else "refuted"
        rec["violation"] = False
    else:
        conc = verify_theorem_conclusion(inst, budget=cfg.budget)
        rec.update(_conclusion_fields(conc))
        rec["outcome"] = conc.outcome
        rec["violation"] = conc.outcome == "fail" and (hyp is None or hyp.holds)
        if cfg.suite == "helly" and conc.outcome == "pass" and conc.color is None:
            raise AssertionError("colorful conclusion without a monochromatic class")
    t3 = time.perf_counter()
    rec["lp"] = _lp_delta(before)
    rec["timings"] = {"generate": t1 - t0, "hypothesis": t2 - t1, "conclusion": t3 - t2}
    return rec


def run_topology_matroid(name: str, m, max_size: int = 3) -> dict:
    """Connectivity of every matroidal join (sizes up to ``max_size``) and the
    parallel-extension checks for one matroid."""
    t0 = time.perf_counter()
    rec: dict[str, Any] = {"suite": "topology", "id": f"topology-{name}", "matroid": name, "n": len(m.ground), "rank": m.rank()}
    loopless = not m.loops()
    # parallel extension: two copies of the first few elements, within the axiom checker's cap
    mult = [1] * len(m.ground)
    loops = set(m.loops())
    budget = 12 - len(m.ground)
    for i, e in enumerate(m.ground):
        if budget <= 0:
            break
        if e not in loops:
            mult[i] = 2
            budget -= 1
    ext = parallel_extension(m, mult)
    axioms = verify_matroid_axioms(ext)
    rec["extension"] = {
        "multiplicities": mult,
        "axioms": axioms.verdict,
        "rank_preserved": ext.rank() == m.rank(),
    }
    ok = axioms.passed and ext.rank() == m.rank()
    if loopless:
        vectors = size_vector_orbits(m, max_size)
        worst = None
        bad = []
        for v in vectors:
            join = matroidal_join_discrete(m, v)  # asserts facet equality with the extension's complex
            c = homological_connectivity(join)
            worst = c if worst is None else min(worst, c)
            if c < m.rank() - 2:
                bad.append(list(v))
        rec["vectors"] = len(vectors)
        rec["min_connectivity"] = worst
        rec["below_bound"] = bad
        prof = reduced_homology(independence_complex(m))
        rec["independence_complex"] = prof.describe()
        ok = ok and not bad
    else:
        rec["vectors"] = 0
        rec["skipped"] = "matroid has loops"
    rec["outcome"] = "pass" if ok else "fail"
    rec["violation"] = not ok
    rec["timings"] = {"total": time.perf_counter() - t0}
    return rec


def _topology_worker(args) -> dict:
    idx, max_size = args
    name, m = builtin_fleet()[idx]
    return run_topology_matroid(name, m, max_size)


def _instance_worker(args) -> dict:
    cfg, seed = args
    return run_instance(cfg, seed)


def run_suite(cfg: SuiteConfig) -> RunReport:
    if cfg.suite not in SUITES:
        raise ValueError(f"unknown suite {cfg.suite!r}; choose from {', '.join(SUITES)}")
    report = RunReport(cfg.to_json())
    if cfg.suite == "topology":
        fleet = builtin_fleet()
        picks = range(len(fleet)) if not cfg.seeds else [s for s in cfg.seeds if s < len(fleet)]
        tasks = [(i, 3) for i in picks]
        worker = _topology_worker
    else:
        tasks = [(cfg, s) for s in cfg.seeds]
        worker = _instance_worker
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            report.records = list(pool.map(worker, tasks))
    else:
        report.records = [worker(t) for t in tasks]
    return report
