"""Checkers for the premises of the transversal theorems.

The central one is :func:`check_models_dependencies`: for every independent
set ``sigma`` and every nontrivial tuple of ``d - k`` affine dependencies of
the phi-images, some nonnegative reweighting with points chosen inside the
sets must give nontrivial affine dependencies in F^d.  For one fixed tuple
this is a single LP (:func:`pullback_feasible`).

Feasibility of that LP depends only on the F-span of the tuple's rows (the
constraints are linear in each row, and the support of the span is the union
of the row supports).  Hence a one-dimensional dependency space is decided
exactly by one LP, while larger spaces are covered by a grid of spans plus
seeded random samples and labeled as sampled.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

import numpy as np

from tvlab.core import Field, QComplex, Scalar, linalg, re_im, to_field
from tvlab.geometry import (
    FarkasCertificate,
    Instance,
    LinearSystem,
    LPResult,
    affine_dependency_kernel,
    hulls_of_unions_intersect,
    lp_feasible,
    point_hulls_intersect,
    polytopes_intersect,
)
from tvlab.matroid import bases, enumerate_independent_sets


class Verdict(str, enum.Enum):
    HOLDS_EXACT = "HOLDS_EXACT"
    HOLDS_SAMPLED = "HOLDS_SAMPLED"
    REFUTED = "REFUTED"


@dataclass
class DependencyTuple:
    sigma: tuple[int, ...]
    rows: list[list[Scalar]]

    def support(self) -> list[int]:
        return [i for i in range(len(self.sigma)) if any(row[i] != 0 for row in self.rows)]


@dataclass
class PullbackWitness:
    r: list[Fraction]
    weights: list[list[Fraction]]  # barycentric weights of q_F over the vertices of F
    points: list[tuple]


@dataclass
class CheckReport:
    condition: str
    verdict: Verdict
    seed: int | None = None
    details: list[dict] = field(default_factory=list)
    witness: object = None
    certificate: FarkasCertificate | None = None
    n_lp: int = 0

    @property
    def holds(self) -> bool:
        return self.verdict is not Verdict.REFUTED

    def summary(self) -> str:
        return f"{self.condition}: {self.verdict.value} ({len(self.details)} cases, {self.n_lp} LPs)"


class HypothesisError(ValueError):
    pass


def _split(z: Scalar, field: Field) -> list[Fraction]:
    re, im = re_im(z)
    return [re] if field is Field.R else [re, im]


def _weighted_lift(
    sys: LinearSystem,
    inst: Instance,
    members: Sequence[int],
    coeffs: Sequence[Sequence[Scalar]],
    tag: str,
) -> list[list[int]]:
    """Nonnegative weights ``lam[l][v]`` over vertices of each member set and
    the rows ``sum_l c[j][l] * (sum_v lam, sum_v lam * v) = 0`` for every
    coefficient row ``c[j]``.  Complex rows are split into Re/Im parts.
    """
    field = inst.field
    lam = [sys.add_vars(len(inst.polytopes[i].vertices), nonneg=True) for i in members]
    for j, row in enumerate(coeffs):
        # affine part: sum_l c_l * r_l = 0
        for part in range(field.real_dim):
            eq = {}
            for l, c in enumerate(row):
                cp = _split(c, field)[part]
                if cp:
                    for var in lam[l]:
                        eq[var] = cp
            sys.add_eq(eq, 0, tag=(tag, "affine", j, part))
        # linear part: sum_l c_l * sum_v lam_v * v = 0 in F^d
        for t in range(inst.d):
            for part in range(field.real_dim):
                eq = {}
                for l, c in enumerate(row):
                    if c == 0:
                        continue
                    poly = inst.polytopes[members[l]]
                    for var, vert in zip(lam[l], poly.vertices):
                        val = _split(c * vert[t], field)[part]
                        if val:
                            eq[var] = val
                sys.add_eq(eq, 0, tag=(tag, "linear", j, t, part))
    return lam


def pullback_feasible(inst: Instance, t: DependencyTuple) -> LPResult:
    """Is there a nontrivial pullback of the dependency tuple ``t``?

    Variables are vertex weights ``lam[F][v] >= 0``; ``r_F`` is their sum and
    ``r_F q_F`` their weighted vertex sum.  Nontriviality is normalized as
    ``sum of r_F over the support of t = 1``.  The witness is a
    :class:`PullbackWitness`.
    """
    sigma = tuple(t.sigma)
    m = len(sigma)
    if len(t.rows) != inst.d - inst.k:
        raise HypothesisError(f"expected {inst.d - inst.k} dependency rows, got {len(t.rows)}")
    if any(len(row) != m for row in t.rows):
        raise HypothesisError("dependency row length does not match sigma")
    if any(i < 0 or i >= inst.n for i in sigma):
        raise HypothesisError("sigma refers to unknown sets")
    rows = [[to_field(x, inst.field) for x in row] for row in t.rows]
    zero = to_field(0, inst.field)
    for row in rows:
        if sum(row, zero) != 0:
            raise HypothesisError("dependency row does not sum to zero")
        for c in range(inst.r):
            if sum((a * inst.phi_of(i)[c] for a, i in zip(row, sigma)), zero) != 0:
                raise HypothesisError("dependency row is not an affine dependency of the phi-images")
    supp = [l for l in range(m) if any(row[l] != 0 for row in rows)]
    if not supp:
        raise HypothesisError("dependency tuple is trivial")
    sys = LinearSystem(0)
    lam = _weighted_lift(sys, inst, sigma, rows, "pullback")
    sys.add_eq({var: 1 for l in supp for var in lam[l]}, 1, tag=("pullback", "normalize"))
    res = lp_feasible(sys)
    if res.feasible:
        x = res.solution
        r_vals, weights, points = [], [], []
        for l, i in enumerate(sigma):
            w = [x[var] for var in lam[l]]
            s = sum(w, Fraction(0))
            r_vals.append(s)
            bary = [v / s for v in w] if s else [Fraction(1)] + [Fraction(0)] * (len(w) - 1)
            weights.append(bary)
            verts = inst.polytopes[i].vertices
            points.append(tuple(sum((b * vert[c] for b, vert in zip(bary, verts)), zero) for c in range(inst.d)))
        res.witness = PullbackWitness(r_vals, weights, points)
    return res


def _canonical_span(vectors: Sequence[Sequence[Scalar]], field: Field) -> tuple:
    red, _ = linalg.rref(vectors, field)
    return tuple(tuple(r) for r in red)


def _grid_spans(basis: list[list[Scalar]], n_rows: int, field: Field) -> list[list[list[Scalar]]]:
    """Distinct spans of at most ``n_rows`` vectors with basis coefficients in {-1,0,1}."""
    dim = len(basis)
    coeffs = []
    for c in product((-1, 0, 1), repeat=dim):
        nz = [x for x in c if x]
        if nz and nz[0] > 0:  # one representative per sign pair
            coeffs.append(c)
    vecs = [[sum((to_field(ci, field) * b[p] for ci, b in zip(c, basis)), to_field(0, field)) for p in range(len(basis[0]))] for c in coeffs]
    seen = set()
    out = []
    for size in range(1, min(n_rows, dim) + 1):
        for combo in combinations(range(len(vecs)), size):
            chosen = [vecs[i] for i in combo]
            if linalg.rank(chosen, field) != size:
                continue
            key = _canonical_span(chosen, field)
            if key in seen:
                continue
            seen.add(key)
            out.append(chosen)
    return out


def _pad_rows(span: list[list[Scalar]], n_rows: int) -> list[list[Scalar]]:
    """Fill a spanning list up to ``n_rows`` rows by repeating the first row."""
    return list(span) + [span[0]] * (n_rows - len(span))


def _random_rows(rng: np.random.Generator, basis, n_rows: int, field: Field) -> list[list[Scalar]]:
    dim = len(basis)
    while True:
        rows = []
        for _ in range(n_rows):
            if field is Field.R:
                c = [Fraction(int(rng.integers(-6, 7)), int(rng.integers(1, 5))) for _ in range(dim)]
            else:
                c = [QComplex(Fraction(int(rng.integers(-6, 7)), int(rng.integers(1, 5))), Fraction(int(rng.integers(-6, 7)), int(rng.integers(1, 5)))) for _ in range(dim)]
            rows.append([sum((ci * b[p] for ci, b in zip(c, basis)), to_field(0, field)) for p in range(len(basis[0]))])
        if any(x != 0 for row in rows for x in row):
            return rows


def check_models_dependencies(inst: Instance, samples: int = 8, seed: int = 0, max_card: int | None = None) -> CheckReport:
    """Does phi model the (d-k, M, F)-dependencies of the family?

    Independent sets are visited in size-then-lexicographic order; the first
    infeasible pullback refutes with its dependency tuple as witness.
    """
    missing = [i for i in range(inst.n) if i not in inst.phi]
    if missing:
        raise HypothesisError(f"phi missing on elements {missing}")
    field = inst.field
    n_rows = inst.d - inst.k
    rng = np.random.default_rng(seed)
    report = CheckReport("models-deps", Verdict.HOLDS_EXACT, seed=seed)
    exact = True
    limit = inst.matroid.rank() if max_card is None else max_card
    for sigma in enumerate_independent_sets(inst.matroid, limit):
        kern = affine_dependency_kernel([inst.phi_of(i) for i in sigma], field)
        entry = {"sigma": list(sigma), "kernel_dim": len(kern)}
        if not kern:
            entry["status"] = "vacuous"
            report.details.append(entry)
            continue
        if len(kern) == 1:
            candidates = [[kern[0]] * n_rows]
            entry["status"] = "exact"
        else:
            candidates = [_pad_rows(span, n_rows) for span in _grid_spans(kern, n_rows, field)]
            candidates += [_random_rows(rng, kern, n_rows, field) for _ in range(samples)]
            entry["status"] = "sampled"
            exact = False
        entry["tested"] = len(candidates)
        report.details.append(entry)
        for rows in candidates:
            t = DependencyTuple(tuple(sigma), rows)
            res = pullback_feasible(inst, t)
            report.n_lp += 1
            if not res.feasible:
                entry["status"] = "refuted"
                report.verdict = Verdict.REFUTED
                report.witness = t
                report.certificate = res.certificate
                return report
    report.verdict = Verdict.HOLDS_EXACT if exact else Verdict.HOLDS_SAMPLED
    return report


def check_colorful_helly(inst: Instance) -> CheckReport:
    """Every colorful choice (one set per class) has a common point."""
    classes = inst.coloring
    if classes is None or len(classes) != inst.d + 1 or any(not c for c in classes):
        raise HypothesisError(f"need exactly d+1 = {inst.d + 1} nonempty color classes")
    report = CheckReport("helly", Verdict.HOLDS_EXACT)
    for choice in product(*classes):
        res = polytopes_intersect([inst.polytopes[i] for i in choice])
        report.n_lp += 1
        report.details.append({"tuple": list(choice), "intersect": res.feasible})
        if not res.feasible:
            report.verdict = Verdict.REFUTED
            report.witness = list(choice)
            report.certificate = res.certificate
            return report
    return report


def check_matroid_intersections(inst: Instance) -> CheckReport:
    """Every independent set of sets has a common point.

    Subfamilies of an intersecting family intersect, so it suffices to check
    the bases.
    """
    report = CheckReport("matroid", Verdict.HOLDS_EXACT)
    for b in bases(inst.matroid):
        if not b:
            continue
        res = polytopes_intersect([inst.polytopes[i] for i in b])
        report.n_lp += 1
        report.details.append({"basis": list(b), "intersect": res.feasible})
        if not res.feasible:
            report.verdict = Verdict.REFUTED
            report.witness = list(b)
            report.certificate = res.certificate
            return report
    return report


def check_holmsen(inst: Instance) -> CheckReport:
    """Crossing phi-hulls force crossing set-hulls on independent bipartitions."""
    if inst.field is not Field.R:
        raise HypothesisError("the hull-crossing condition is stated over R")
    report = CheckReport("holmsen", Verdict.HOLDS_EXACT)
    for sigma in enumerate_independent_sets(inst.matroid, inst.matroid.rank()):
        if len(sigma) < 2:
            continue
        head, rest = sigma[0], sigma[1:]
        for mask in range(0, 2 ** len(rest) - 1):
            g1 = [head] + [e for b, e in enumerate(rest) if mask >> b & 1]
            g2 = [e for b, e in enumerate(rest) if not mask >> b & 1]
            sets = hulls_of_unions_intersect([inst.polytopes[i] for i in g1], [inst.polytopes[i] for i in g2])
            report.n_lp += 1
            if sets.feasible:
                continue
            images = point_hulls_intersect([inst.phi_of(i) for i in g1], [inst.phi_of(i) for i in g2])
            report.n_lp += 1
            report.details.append({"g1": g1, "g2": g2, "sets_meet": False, "images_meet": images.feasible})
            if images.feasible:
                report.verdict = Verdict.REFUTED
                report.witness = (g1, g2)
                report.certificate = sets.certificate
                return report
    return report


@dataclass
class C1Result:
    holds: bool
    a: list[Fraction] | None = None
    points: list[tuple] | None = None
    certificate: FarkasCertificate | None = None
    lp: LPResult | None = None


def c1_holds(inst: Instance, sigma: Sequence[int], z: Sequence[Sequence[Scalar]]) -> C1Result:
    """Condition (c1): all nonnegative pullbacks along the sign data ``z`` are trivial.

    ``z[l]`` is a nonzero vector of length ``d - k`` whose entries have
    modulus 0 or 1.  (c1) holds exactly when the normalized LP
    (``sum a_l = 1``) is infeasible; otherwise the witness ``a`` and points
    ``q_l`` are returned.
    """
    field = inst.field
    n_rows = inst.d - inst.k
    sigma = tuple(sigma)
    if len(z) != len(sigma):
        raise HypothesisError("one z vector per element of sigma is required")
    zz = []
    for vec in z:
        vec = [to_field(x, field) for x in vec]
        if len(vec) != n_rows:
            raise HypothesisError(f"z vectors must have length d-k = {n_rows}")
        if all(x == 0 for x in vec):
            raise HypothesisError("z vectors must be nonzero")
        for x in vec:
            mod2 = x.abs2() if isinstance(x, QComplex) else x * x
            if mod2 not in (0, 1):
                raise HypothesisError(f"entry {x} has modulus other than 0 or 1")
        zz.append(vec)
    if not inst.matroid.is_independent(sigma):
        raise HypothesisError("sigma is not independent")
    rows = [[zz[l][j] for l in range(len(sigma))] for j in range(n_rows)]
    sys = LinearSystem(0)
    lam = _weighted_lift(sys, inst, sigma, rows, "c1")
    sys.add_eq({var: 1 for block in lam for var in block}, 1, tag=("c1", "normalize"))
    res = lp_feasible(sys)
    if not res.feasible:
        return C1Result(True, certificate=res.certificate, lp=res)
    x = res.solution
    a, pts = [], []
    zero = to_field(0, field)
    for l, i in enumerate(sigma):
        w = [x[var] for var in lam[l]]
        s = sum(w, Fraction(0))
        a.append(s)
        verts = inst.polytopes[i].vertices
        bary = [v / s for v in w] if s else [Fraction(1)] + [Fraction(0)] * (len(w) - 1)
        pts.append(tuple(sum((b * vert[c] for b, vert in zip(bary, verts)), zero) for c in range(inst.d)))
    return C1Result(False, a=a, points=pts, lp=res)


def sign_vectors(n: int) -> list[tuple[int, ...]]:
    """The real sign set: nonzero vectors in {-1, 0, 1}^n."""
    return [v for v in product((-1, 0, 1), repeat=n) if any(v)]


def unit_circle_points(max_param: int = 3) -> list[QComplex]:
    """Rational points on the unit circle from Pythagorean parametrization."""
    pts = {QComplex(1), QComplex(-1), QComplex(0, 1), QComplex(0, -1)}
    for t in range(1, max_param + 1):
        for s in range(1, max_param + 1):
            u = Fraction(t, s)
            den = 1 + u * u
            re, im = (1 - u * u) / den, 2 * u / den
            for a, b in ((re, im), (-re, im), (re, -im), (-re, -im)):
                pts.add(QComplex(a, b))
    return sorted(pts, key=lambda q: (q.re, q.im))


def check_c1(inst: Instance, sigma: Sequence[int] | None = None, z: Sequence[Sequence[Scalar]] | None = None) -> CheckReport:
    """Condition (c1) for the given ``(sigma, z)``, or for every independent
    ``sigma`` and every choice of real sign vectors ``z_l`` when none is given.

    The LP is unchanged when all ``z_l`` are negated, so the first vector is
    taken with a positive leading entry.
    """
    report = CheckReport("c1", Verdict.HOLDS_EXACT)
    if sigma is not None:
        cases = [(tuple(sigma), z)]
    else:
        if inst.field is not Field.R:
            raise HypothesisError("enumerated c1 checks are only provided over R; pass sigma and z")
        cases = []
        for s in enumerate_independent_sets(inst.matroid, inst.matroid.rank()):
            signs = sign_vectors(inst.d - inst.k)
            heads = [v for v in signs if next(x for x in v if x) > 0]
            for head in heads:
                for tail in product(signs, repeat=len(s) - 1):
                    cases.append((s, [head, *tail]))
    for s, zz in cases:
        out = c1_holds(inst, s, zz)
        report.n_lp += 1
        report.details.append({"sigma": list(s), "z": [[str(x) for x in v] for v in zz], "holds": out.holds})
        if not out.holds:
            report.verdict = Verdict.REFUTED
            report.witness = {"sigma": list(s), "a": out.a, "points": out.points}
            return report
    return report

