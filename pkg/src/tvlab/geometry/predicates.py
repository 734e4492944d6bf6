"""LP-decidable predicates on polytopes and flats."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from tvlab.core import Field, QComplex, Scalar, conj, kernel_basis, linalg, re_im, to_field
from tvlab.geometry.lp import LinearSystem, LPResult, lp_feasible
from tvlab.geometry.objects import Flat, GeometryError, Instance, Polytope, realify


def unrealify(coords: Sequence[Fraction], field: Field) -> tuple:
    if field is Field.R:
        return tuple(coords)
    return tuple(QComplex(coords[2 * i], coords[2 * i + 1]) for i in range(len(coords) // 2))


def _same_space(polys: Sequence[Polytope]) -> tuple[Field, int]:
    if not polys:
        raise GeometryError("at least one polytope is required")
    fields = {p.field for p in polys}
    dims = {p.dim for p in polys}
    if len(fields) != 1 or len(dims) != 1:
        raise GeometryError("polytopes live in different spaces")
    return polys[0].field, polys[0].dim


def _add_hull_block(sys: LinearSystem, poly: Polytope, tag) -> list[int]:
    """Convex-combination weights for ``poly``; adds the sum-to-one row."""
    lam = sys.add_vars(len(poly.vertices), nonneg=True)
    sys.add_eq({j: 1 for j in lam}, 1, tag=(tag, "sum"))
    return lam


def _core(result: LPResult) -> list[int]:
    """Polytope indices whose rows carry nonzero Farkas multipliers."""
    tags = result.system.row_tags
    idx = set()
    for i in result.certificate.support():
        t = tags[i]
        if t is not None and isinstance(t[0], int):
            idx.add(t[0])
    return sorted(idx)


def polytopes_intersect(parts: Sequence[Polytope]) -> LPResult:
    """Common point of all polytopes, via barycentric weights per polytope.

    On infeasibility ``extra["core"]`` lists the polytopes involved in the
    certificate; that subfamily is already disjoint.
    """
    field, d = _same_space(parts)
    D = d * field.real_dim
    sys = LinearSystem(0)
    x = sys.add_vars(D)
    blocks = []
    for p, poly in enumerate(parts):
        lam = _add_hull_block(sys, poly, p)
        blocks.append(lam)
        for c in range(D):
            row = {j: v[c] for j, v in zip(lam, poly.real_vertices) if v[c]}
            row[x[c]] = -1
            sys.add_eq(row, 0, tag=(p, "coord", c))
    res = lp_feasible(sys)
    if res.feasible:
        sol = res.solution
        res.witness = unrealify([sol[j] for j in x], field)
        res.extra["weights"] = [[sol[j] for j in lam] for lam in blocks]
    else:
        res.extra["core"] = _core(res)
    return res


def hulls_of_unions_intersect(g1: Sequence[Polytope], g2: Sequence[Polytope]) -> LPResult:
    """Whether conv(union g1) and conv(union g2) meet."""
    if not g1 or not g2:
        raise GeometryError("both families must be nonempty")
    field, d = _same_space(list(g1) + list(g2))
    v1 = [v for p in g1 for v in p.real_vertices]
    v2 = [v for p in g2 for v in p.real_vertices]
    sys = LinearSystem(0)
    lam = sys.add_vars(len(v1), nonneg=True)
    mu = sys.add_vars(len(v2), nonneg=True)
    sys.add_eq({j: 1 for j in lam}, 1, tag=("g1", "sum"))
    sys.add_eq({j: 1 for j in mu}, 1, tag=("g2", "sum"))
    for c in range(d * field.real_dim):
        row = {j: v[c] for j, v in zip(lam, v1) if v[c]}
        for j, v in zip(mu, v2):
            if v[c]:
                row[j] = -v[c]
        sys.add_eq(row, 0, tag=("coord", c))
    res = lp_feasible(sys)
    if res.feasible:
        res.witness = unrealify([sum(res.solution[j] * v[c] for j, v in zip(lam, v1)) for c in range(len(v1[0]))], field)
    return res


def point_hulls_intersect(p1: Sequence[Sequence], p2: Sequence[Sequence], field: Field = Field.R) -> LPResult:
    """conv(p1) vs conv(p2) for finite point sets (possibly in dimension 0)."""
    if p1 and len(p1[0]) == 0:
        return LPResult(True, witness=())
    return hulls_of_unions_intersect([Polytope(p1, field)], [Polytope(p2, field)])


def flat_meets_polytope(flat: Flat, poly: Polytope) -> LPResult:
    """Whether ``base + sum s_i dir_i`` lies in ``poly`` for some s in F^k."""
    if flat.field is not poly.field or flat.dim != poly.dim:
        raise GeometryError("flat and polytope live in different spaces")
    dirs = flat.real_directions()
    base = list(realify(flat.base))
    sys = LinearSystem(0)
    s = sys.add_vars(len(dirs))
    lam = _add_hull_block(sys, poly, 0)
    for c in range(len(base)):
        row = {j: -v[c] for j, v in zip(lam, poly.real_vertices) if v[c]}
        for j, dvec in zip(s, dirs):
            if dvec[c]:
                row[j] = dvec[c]
        sys.add_eq(row, -base[c], tag=(0, "coord", c))
    res = lp_feasible(sys)
    if res.feasible:
        pt = [sum((res.solution[j] * v[c] for j, v in zip(lam, poly.real_vertices)), Fraction(0)) for c in range(len(base))]
        res.witness = unrealify(pt, flat.field)
        res.extra["weights"] = [res.solution[j] for j in lam]
    return res


def affine_dependency_kernel(points: Sequence[Sequence[Scalar]], field: Field = Field.R) -> list[list[Scalar]]:
    """Basis of ``{a : sum a_i = 0, sum a_i p_i = 0}`` over the field."""
    if not points:
        raise GeometryError("at least one point is required")
    m = len(points)
    r = len(points[0])
    one = to_field(1, field)
    mat = [[one] * m] + [[to_field(p[c], field) for p in points] for c in range(r)]
    return kernel_basis(mat, field)


def affine_rank(points: Sequence[Sequence[Scalar]], field: Field = Field.R) -> int:
    """Dimension of the affine hull of the points."""
    if len(points) <= 1:
        return 0
    base = points[0]
    diffs = [[to_field(a, field) - to_field(b, field) for a, b in zip(p, base)] for p in points[1:]]
    if not diffs[0]:
        return 0
    return linalg.rank(diffs, field)


def compute_shadow_set(frame: Sequence[Sequence[Scalar]], inst: Instance) -> list[int]:
    """Indices i whose height-one lift ``F_i x {1}`` misses the orthogonal
    complement of ``span(frame)``.

    Only the span of the frame matters, so frames need not be orthonormal.
    """
    field, d = inst.field, inst.d
    frame = [tuple(to_field(x, field) for x in v) for v in frame]
    if len(frame) != d - inst.k:
        raise GeometryError(f"expected a frame of {d - inst.k} vectors, got {len(frame)}")
    if any(len(v) != d + 1 for v in frame):
        raise GeometryError("frame vectors must live in F^(d+1)")
    if linalg.rank(frame, field) != len(frame):
        raise GeometryError("frame vectors are linearly dependent")
    out = []
    for i, poly in enumerate(inst.polytopes):
        sys = LinearSystem(0)
        lam = _add_hull_block(sys, poly, i)
        for j, v in enumerate(frame):
            cv = [conj(x) for x in v]
            coeff = [sum((a * b for a, b in zip(cv[:d], vert)), to_field(0, field)) for vert in poly.vertices]
            const = cv[d]
            # sum_v lam_v <v_j, (vert, 1)> = 0 using sum lam = 1
            parts = [(lambda z: re_im(z)[0], "re")]
            if field is Field.C:
                parts.append((lambda z: re_im(z)[1], "im"))
            for part, name in parts:
                row = {jj: part(c) + part(const) for jj, c in zip(lam, coeff)}
                sys.add_eq(row, 0, tag=(i, name, j))
        if not lp_feasible(sys).feasible:
            out.append(i)
    return out
