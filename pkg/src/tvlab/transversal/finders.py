"""Point, line and k-flat transversal finders.

Only the point finder and the planar line finder may report nonexistence;
the general k-flat search is a float heuristic whose positive answers are
re-verified exactly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from tvlab.core import Field, QComplex
from tvlab.geometry import (
    Flat,
    GeometryError,
    Instance,
    LinearSystem,
    Polytope,
    flat_meets_polytope,
    lp_feasible,
    polytopes_intersect,
    unrealify,
)
from tvlab.transversal import _kernels


class Status(str, enum.Enum):
    FOUND = "FOUND"
    NOT_FOUND_EXACT = "NOT_FOUND_EXACT"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class TransversalResult:
    status: Status
    method: str
    subset: tuple[int, ...]
    flat: Flat | None = None
    witnesses: dict[int, tuple] = field(default_factory=dict)
    certificate: object = None
    core: tuple[int, ...] | None = None  # sub-subset that already has no transversal
    detail: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.status is Status.FOUND


@dataclass(frozen=True)
class Budget:
    restarts: int = 8
    iterations: int = 200
    seed: int = 0


def _subset(inst: Instance, subset) -> tuple[int, ...]:
    sub = tuple(range(inst.n)) if subset is None else tuple(sorted(set(subset)))
    if not sub:
        raise GeometryError("subset must be nonempty")
    if sub[0] < 0 or sub[-1] >= inst.n:
        raise GeometryError("subset refers to unknown sets")
    return sub


def _verify(flat: Flat, inst: Instance, sub: Sequence[int]) -> dict[int, tuple] | None:
    """Exact membership check of every set; per-set witness points."""
    out = {}
    for i in sub:
        res = flat_meets_polytope(flat, inst.polytopes[i])
        if not res.feasible:
            return None
        out[i] = res.witness
    return out


def find_point_transversal(inst: Instance, subset=None) -> TransversalResult:
    sub = _subset(inst, subset)
    res = polytopes_intersect([inst.polytopes[i] for i in sub])
    if res.feasible:
        flat = Flat(inst.field, res.witness, ())
        return TransversalResult(Status.FOUND, "point-lp", sub, flat, {i: res.witness for i in sub})
    core = tuple(sub[p] for p in res.extra["core"])
    return TransversalResult(Status.NOT_FOUND_EXACT, "point-lp", sub, certificate=res.certificate, core=core)


def _primitive(u: tuple[Fraction, Fraction]) -> tuple[int, int]:
    """Integer direction proportional to ``u`` with gcd 1 and a fixed sign."""
    den = math.lcm(u[0].denominator, u[1].denominator)
    a, b = int(u[0] * den), int(u[1] * den)
    g = math.gcd(a, b)
    a, b = a // g, b // g
    if b < 0 or (b == 0 and a < 0):
        a, b = -a, -b
    return a, b


def critical_directions(polys: Sequence[Polytope]) -> list[tuple[int, int]]:
    """Normals of lines through two distinct vertices, plus the two axes."""
    pts = sorted({v for p in polys for v in p.vertices})
    dirs = {(1, 0), (0, 1)}
    for p, q in combinations(pts, 2):
        dirs.add(_primitive((q[1] - p[1], p[0] - q[0])))
    return sorted(dirs)


def _strips(polys, u):
    return [(min(u[0] * v[0] + u[1] * v[1] for v in p.vertices), max(u[0] * v[0] + u[1] * v[1] for v in p.vertices)) for p in polys]


def _line(u: tuple[int, int], c: Fraction) -> Flat:
    a, b = u
    base = (Fraction(0), Fraction(c, b)) if b else (Fraction(c, a), Fraction(0))
    return Flat(Field.R, base, ((Fraction(-b), Fraction(a)),))


def find_line_transversal_2d(inst: Instance, subset=None) -> TransversalResult:
    """Exact line transversal in the real plane by critical directions.

    For a normal ``u`` a stabbing line exists iff the largest per-set
    minimum of ``<u, .>`` is at most the smallest per-set maximum.  Feasible
    directions form closed arcs whose endpoints are critical, so checking the
    critical directions decides existence.
    """
    if inst.field is not Field.R or inst.d != 2:
        raise GeometryError("the exact line finder needs a real planar instance")
    sub = _subset(inst, subset)
    polys = [inst.polytopes[i] for i in sub]
    dirs = critical_directions(polys)
    blockers: set[int] = set()
    for u in dirs:
        strips = _strips(polys, u)
        lo = max(s[0] for s in strips)
        hi = min(s[1] for s in strips)
        if lo <= hi:
            flat = _line(u, lo)
            wit = _verify(flat, inst, sub)
            if wit is None:
                raise AssertionError("line from a feasible direction failed exact verification")
            return TransversalResult(Status.FOUND, "critical-directions", sub, flat, wit, detail={"normal": u, "checked": len(dirs)})
        a = max(range(len(strips)), key=lambda p: strips[p][0])
        b = min(range(len(strips)), key=lambda p: strips[p][1])
        blockers.update((sub[a], sub[b]))
    core = tuple(sorted(blockers))
    if core != sub and find_line_transversal_2d(inst, core).found:
        raise AssertionError("blocking core admits a line transversal")
    return TransversalResult(Status.NOT_FOUND_EXACT, "critical-directions", sub, certificate=dirs, core=core)


def line_directions_grid(polys: Sequence[Polytope], n: int = 90) -> bool:
    """Brute-force oracle: does some primitive normal (a, b) with
    ``|a|, |b| <= n`` admit a stabbing line?  Integer arithmetic throughout."""
    den = 1
    for p in polys:
        for v in p.vertices:
            den = math.lcm(den, v[0].denominator, v[1].denominator)
    verts, ptr = [], [0]
    for p in polys:
        verts.extend((int(v[0] * den), int(v[1] * den)) for v in p.vertices)
        ptr.append(len(verts))
    dirs = [(a, b) for a in range(-n, n + 1) for b in range(0, n + 1) if math.gcd(a, b) == 1 and (b > 0 or a == 1)]
    found = _kernels.stab_directions(np.array(verts), np.array(ptr), np.array(dirs))
    return bool(found.any())


# ---- float k-flat search -------------------------------------------------


def _complex_matrix(p: Polytope) -> np.ndarray:
    if p.field is Field.R:
        return np.array([[float(x) for x in v] for v in p.vertices])
    return np.array([[complex(x) for x in v] for v in p.vertices])


def _closest_point(verts: np.ndarray, base: np.ndarray, W: np.ndarray) -> tuple[np.ndarray, float]:
    """Point of conv(verts) nearest the flat ``base + span(W)`` and its squared distance."""
    diff = verts - base
    proj = diff - (diff @ W.conj()) @ W.T
    real = np.concatenate([proj.real, proj.imag], axis=1) if np.iscomplexobj(proj) else proj
    x, lam = _kernels.min_norm_point(real)
    return lam @ verts, float(x @ x)


def _fit_flat(points: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    base = points.mean(axis=0)
    _, _, vh = np.linalg.svd(points - base, full_matrices=True)
    return base, vh[:k].conj().T  # orthonormal columns (d, k)


def _rref_rows(W: np.ndarray) -> np.ndarray:
    """Row-reduce the k direction rows with full pivoting; pivots become exactly 1."""
    A = W.T.copy()
    used: list[int] = []
    for r in range(A.shape[0]):
        mag = np.abs(A[r:])
        mag[:, used] = -1.0
        i, c = np.unravel_index(int(np.argmax(mag)), mag.shape)
        A[[r, r + i]] = A[[r + i, r]]
        A[r] /= A[r, c]
        for o in range(A.shape[0]):
            if o != r:
                A[o] -= A[o, c] * A[r]
        A[r, c] = 1.0
        used.append(int(c))
    return A


def _rationalize(x, field: Field, max_den: int):
    if field is Field.R:
        return Fraction(float(x)).limit_denominator(max_den)
    return QComplex(Fraction(float(x.real)).limit_denominator(max_den), Fraction(float(x.imag)).limit_denominator(max_den))


def flat_through_all(inst: Instance, sub: Sequence[int], directions) -> Flat | None:
    """Exact LP for a base point such that ``base + span(directions)`` meets
    every set of ``sub``; ``None`` when no such base exists."""
    field = inst.field
    probe = Flat(field, (0,) * inst.d, tuple(directions))
    rdirs = probe.real_directions()
    D = inst.d * field.real_dim
    sys = LinearSystem(0)
    base = sys.add_vars(D)
    for i in sub:
        poly = inst.polytopes[i]
        s = sys.add_vars(len(rdirs))
        lam = sys.add_vars(len(poly.vertices), nonneg=True)
        sys.add_eq({j: 1 for j in lam}, 1, tag=(i, "sum"))
        for c in range(D):
            row = {base[c]: 1}
            for j, dv in zip(s, rdirs):
                if dv[c]:
                    row[j] = dv[c]
            for j, v in zip(lam, poly.real_vertices):
                if v[c]:
                    row[j] = -v[c]
            sys.add_eq(row, 0, tag=(i, "coord", c))
    res = lp_feasible(sys)
    if not res.feasible:
        return None
    return Flat(field, unrealify([res.solution[j] for j in base], field), tuple(directions))


def find_k_flat_heuristic(inst: Instance, subset=None, budget: Budget = Budget(), tol: float = 1e-14) -> TransversalResult:
    """Alternating float search for a k-flat near every set, then exact repair.

    Each restart alternates nearest points (min-norm point on the projected
    vertices) with a least-squares flat fit.  Once the total squared
    distance is tiny the directions are rationalized and an exact LP looks
    for a base point; only an exactly verified flat is reported.
    """
    sub = _subset(inst, subset)
    k = inst.k
    if k == 0:
        return find_point_transversal(inst, sub)
    if budget.restarts <= 0 or budget.iterations <= 0:
        return TransversalResult(Status.INCONCLUSIVE, "float-search", sub, detail={"reason": "empty budget"})
    rng = np.random.default_rng(budget.seed)
    mats = [_complex_matrix(inst.polytopes[i]) for i in sub]
    complex_field = inst.field is Field.C
    best_obj = math.inf
    tried = 0
    for restart in range(budget.restarts):
        pts = np.array([m[rng.integers(len(m))] for m in mats])
        if restart == 0:
            pts = np.array([m.mean(axis=0) for m in mats])
        base, W = _fit_flat(pts, k)
        if complex_field and not np.iscomplexobj(W):
            W = W.astype(complex)
        obj = math.inf
        for _ in range(budget.iterations):
            new = []
            obj = 0.0
            for m in mats:
                x, dist2 = _closest_point(m, base, W)
                new.append(x)
                obj += dist2
            if obj <= tol:
                break
            base, W = _fit_flat(np.array(new), k)
        best_obj = min(best_obj, obj)
        if obj > 1e-8:
            continue
        A = _rref_rows(W)
        for max_den in (10**6, 10**3, 10**2):
            tried += 1
            dirs = tuple(tuple(_rationalize(x, inst.field, max_den) for x in row) for row in A)
            try:
                flat = flat_through_all(inst, sub, dirs)
            except GeometryError:
                continue
            if flat is None:
                continue
            wit = _verify(flat, inst, sub)
            if wit is not None:
                return TransversalResult(Status.FOUND, "float-search", sub, flat, wit, detail={"restart": restart, "objective": obj})
    return TransversalResult(Status.INCONCLUSIVE, "float-search", sub, detail={"best_objective": best_obj, "rounding_attempts": tried})


def best_finder(inst: Instance):
    """Exact finder when one exists, otherwise the float search."""
    if inst.k == 0:
        return find_point_transversal
    if inst.field is Field.R and inst.d == 2 and inst.k == 1:
        return find_line_transversal_2d
    return find_k_flat_heuristic
