"""Search for the subfamily promised by the transversal theorems."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from tvlab.geometry import Flat, Instance
from tvlab.matroid import PartitionMatroid
from tvlab.transversal.finders import Budget, Status, best_finder, find_k_flat_heuristic


@dataclass
class ConclusionReport:
    outcome: str  # "pass" | "fail" | "inconclusive"
    bound: int
    removed: tuple[int, ...] | None = None
    subfamily: tuple[int, ...] | None = None
    flat: Flat | None = None
    rank_removed: int | None = None
    color: int | None = None
    method: str | None = None
    tried: int = 0
    pruned: int = 0
    inconclusive: int = 0
    detail: dict = field(default_factory=dict)


def verify_theorem_conclusion(inst: Instance, bound: int | None = None, budget: Budget = Budget()) -> ConclusionReport:
    """Look for ``S`` with ``rank(S) <= bound`` whose complement has a k-transversal.

    Complements are tried by increasing ``|S|``, lexicographically within a
    size.  A complement containing a subfamily already shown to have no
    transversal is skipped.  "fail" means every candidate was refuted by an
    exact method.
    """
    bound = inst.bound() if bound is None else bound
    finder = best_finder(inst)
    m = inst.matroid
    ground = tuple(range(inst.n))
    cores: list[frozenset] = []
    report = ConclusionReport("fail", bound)
    for size in range(0, inst.n + 1):
        for removed in combinations(ground, size):
            rk = m.rank(removed)
            if rk > bound:
                continue
            keep = tuple(i for i in ground if i not in set(removed))
            if not keep:
                return _passed(report, inst, removed, keep, None, rk, "vacuous")
            gset = frozenset(keep)
            if any(c <= gset for c in cores):
                report.pruned += 1
                continue
            report.tried += 1
            if finder is find_k_flat_heuristic:
                res = finder(inst, keep, budget)
            else:
                res = finder(inst, keep)
            if res.status is Status.FOUND:
                return _passed(report, inst, removed, keep, res.flat, rk, res.method)
            if res.status is Status.NOT_FOUND_EXACT:
                cores.append(frozenset(res.core or keep))
            else:
                report.inconclusive += 1
    if report.inconclusive:
        report.outcome = "inconclusive"
    return report


def _passed(report, inst, removed, keep, flat, rk, method) -> ConclusionReport:
    report.outcome = "pass"
    report.removed = tuple(removed)
    report.subfamily = tuple(keep)
    report.flat = flat
    report.rank_removed = rk
    report.method = method
    if isinstance(inst.matroid, PartitionMatroid):
        g = set(keep)
        report.color = next((j for j, c in enumerate(inst.matroid.classes) if set(c) <= g), None)
    return report
