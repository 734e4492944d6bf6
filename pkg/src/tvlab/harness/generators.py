"""Seeded instance generators with known ground truth.

All randomness comes from ``numpy.random.default_rng(seed)`` (PCG64), and
every coordinate is a small rational, so instances are reproducible across
platforms.  Hypothesis-true families are built by inflating sets about a
fixed interior point until the exact checker passes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from tvlab.core import Field, QComplex, linalg, to_field
from tvlab.geometry import Flat, Instance, Polytope, affine_rank, realify
from tvlab.harness.serialize import InstanceSpec
from tvlab.hypotheses import check_colorful_helly, check_holmsen, check_matroid_intersections
from tvlab.matroid import LinearMatroid, Matroid, PartitionMatroid, UniformMatroid, matroid_from_spec


class GeneratorError(ValueError):
    pass


def _rat(rng: np.random.Generator, lo: int, hi: int, max_den: int = 4) -> Fraction:
    den = int(rng.integers(1, max_den + 1))
    return Fraction(int(rng.integers(lo * den, hi * den + 1)), den)


def _scalar(rng, field: Field, lo: int, hi: int, max_den: int = 4):
    if field is Field.R:
        return _rat(rng, lo, hi, max_den)
    return QComplex(_rat(rng, lo, hi, max_den), _rat(rng, lo, hi, max_den))


def _simplex_around(rng, center, field: Field, n_vertices: int, spread) -> list[tuple]:
    """Vertices ``center + o_j`` whose offsets sum to zero, so ``center`` is
    the vertex centroid.  Resampled until the hull is full-dimensional when
    there are enough vertices."""
    d = len(center)
    full = n_vertices >= d * field.real_dim + 1
    for _ in range(100):
        offs = [[_scalar(rng, field, -spread, spread) for _ in range(d)] for _ in range(n_vertices - 1)]
        last = [-sum((o[c] for o in offs), to_field(0, field)) for c in range(d)]
        verts = [tuple(center[c] + o[c] for c in range(d)) for o in offs + [last]]
        if not full or _real_affine_rank(verts, field) == d * field.real_dim:
            return verts
    raise GeneratorError("could not sample a full-dimensional polytope")


def _real_affine_rank(verts, field: Field) -> int:
    return affine_rank([realify(v) for v in verts], Field.R)


@dataclass(frozen=True)
class PiercedParams:
    field: Field = Field.R
    d: int = 2
    k: int = 1
    r: int = 1
    n: int = 6
    vertices: int | None = None  # per set; default d*realdim + 1
    spread: int = 2
    matroid: dict | None = None  # default U(min(n, bound + 1), n)


def generate_pierced_instance(seed: int, params: PiercedParams = PiercedParams()) -> InstanceSpec:
    """Family pierced by a random rational k-flat V.

    Set i is a polytope whose vertex centroid is a point q_i of V; phi(F_i)
    is the first r coordinates of q_i in V's internal coordinates.
    """
    p = params
    fld = Field(p.field)
    if not 0 <= p.r <= p.k < p.d or p.n < 1:
        raise GeneratorError(f"invalid parameters {p}")
    rng = np.random.default_rng(seed)
    base = tuple(_scalar(rng, fld, -3, 3, 1) for _ in range(p.d))
    while True:
        dirs = tuple(tuple(_scalar(rng, fld, -2, 2, 1) for _ in range(p.d)) for _ in range(p.k))
        if not dirs or linalg.rank(dirs, fld) == p.k:
            break
    flat = Flat(fld, base, dirs)
    nv = p.vertices or p.d * fld.real_dim + 1
    polys, phi = [], {}
    for i in range(p.n):
        t = [_scalar(rng, fld, -4, 4) for _ in range(p.k)]
        q = flat.point(t)
        polys.append(Polytope(_simplex_around(rng, q, fld, nv, p.spread), fld))
        phi[i] = tuple(t[: p.r])
    inst_bound = fld.real_dim * (p.d - p.k) * (p.r + 1)
    m = matroid_from_spec(p.matroid) if p.matroid else UniformMatroid(min(p.n, inst_bound + 1), p.n)
    inst = Instance(fld, p.d, p.k, p.r, polys, m, phi)
    prov = {"generator": "pierced", "seed": seed, "params": _params_json(p)}
    return InstanceSpec(inst, prov, flat)


def _params_json(p) -> dict:
    out = {}
    for k, v in p.__dict__.items():
        out[k] = v.value if isinstance(v, Field) else v
    return out


def _inflate_until(inst: Instance, check, centers: dict[int, tuple], frozen: set[int] = frozenset(), max_rounds: int = 200):
    """Scale the sets named by each refutation about their centers until ``check`` holds."""
    for _ in range(max_rounds):
        rep = check(inst)
        if rep.holds:
            return inst, rep
        w = rep.witness
        members = set(w[0]) | set(w[1]) if isinstance(w, tuple) else set(w)
        grow = [i for i in sorted(members) if i not in frozen]
        if not grow:
            raise GeneratorError("refutation involves only frozen sets")
        for i in grow:
            inst.polytopes[i] = inst.polytopes[i].scaled(2, centers[i])
    raise GeneratorError("inflation did not converge")


def _random_sets(rng, n, d, field: Field, box: int, spread: int) -> tuple[list[Polytope], dict[int, tuple]]:
    polys, centers = [], {}
    for i in range(n):
        c = tuple(_scalar(rng, field, -box, box) for _ in range(d))
        polys.append(Polytope(_simplex_around(rng, c, field, d * field.real_dim + 1, spread), field))
        centers[i] = c
    return polys, centers


@dataclass(frozen=True)
class ColorfulParams:
    d: int = 2
    classes: int | None = None  # default d + 1
    sets_per_class: int | tuple[int, ...] = 3
    mode: str = "hypothesis-true"


def generate_colorful_instance(seed: int, params: ColorfulParams = ColorfulParams()) -> InstanceSpec:
    p = params
    n_cls = p.classes if p.classes is not None else p.d + 1
    if n_cls != p.d + 1:
        raise GeneratorError("colorful Helly needs exactly d+1 classes")
    if p.mode not in ("hypothesis-true", "hypothesis-false"):
        raise GeneratorError(f"unknown mode {p.mode!r}")
    sizes = [p.sets_per_class] * n_cls if isinstance(p.sets_per_class, int) else list(p.sets_per_class)
    if len(sizes) != n_cls or min(sizes) < 1:
        raise GeneratorError("bad class sizes")
    rng = np.random.default_rng(seed)
    d = p.d
    classes, acc = [], 0
    for s in sizes:
        classes.append(list(range(acc, acc + s)))
        acc += s
    n = acc
    anchor = tuple(_rat(rng, -2, 2) for _ in range(d))
    polys, centers = _random_sets(rng, n, d, Field.R, 6, 2)
    # the designated class contains the anchor point
    for i in classes[0]:
        polys[i] = Polytope(_simplex_around(rng, anchor, Field.R, d + 1, 2), Field.R)
        centers[i] = anchor
    m = PartitionMatroid(classes)
    inst = Instance(Field.R, d, 0, 0, polys, m, coloring=classes)
    prov = {"generator": "colorful", "seed": seed, "params": {"d": d, "sizes": sizes, "mode": p.mode}}
    if p.mode == "hypothesis-true":
        _inflate_until(inst, check_colorful_helly, centers, frozen=set(classes[0]))
        prov["anchor"] = [str(x) for x in anchor]
        return InstanceSpec(inst, prov, Flat(Field.R, anchor, ()))
    # plant one set far outside everything else; every colorful tuple through it is disjoint
    far = max(abs(x) for poly in polys for v in poly.vertices for x in v) + 10
    j = classes[1][0]
    inst.polytopes[j] = Polytope([(far,) * d], Field.R)
    prov["planted"] = j
    return InstanceSpec(inst, prov)


@dataclass(frozen=True)
class MatroidFamilyParams:
    d: int = 2
    matroid: dict | None = None
    spread: int = 2


def random_small_matroid(rng, max_n: int = 8, max_rank: int = 4) -> Matroid:
    """Uniform, partition or real linear matroid, loopless, chosen by the rng."""
    kind = ("uniform", "partition", "linear")[int(rng.integers(3))]
    n = int(rng.integers(3, max_n + 1))
    r = int(rng.integers(1, min(max_rank, n) + 1))
    if kind == "uniform":
        return UniformMatroid(r, n)
    if kind == "partition":
        labels = list(range(r)) + [int(rng.integers(r)) for _ in range(n - r)]
        rng.shuffle(labels)
        return PartitionMatroid([[e for e in range(n) if labels[e] == c] for c in range(r)])
    while True:
        cols = [[Fraction(int(rng.integers(-2, 3))) for _ in range(r)] for _ in range(n)]
        if all(any(c) for c in cols) and linalg.rank(cols, Field.R) == r:
            return LinearMatroid(cols, Field.R)


def generate_kalai_meshulam_instance(seed: int, params: MatroidFamilyParams = MatroidFamilyParams()) -> InstanceSpec:
    """Every independent set of sets intersects (point transversal setting)."""
    rng = np.random.default_rng(seed)
    m = matroid_from_spec(params.matroid) if params.matroid else random_small_matroid(rng)
    n = len(m.ground)
    polys, centers = _random_sets(rng, n, params.d, Field.R, 4, params.spread)
    inst = Instance(Field.R, params.d, 0, 0, polys, m)
    _inflate_until(inst, check_matroid_intersections, centers)
    return InstanceSpec(inst, {"generator": "kalai-meshulam", "seed": seed})


@dataclass(frozen=True)
class HolmsenParams:
    r: int = 1
    n: int = 6
    matroid: dict | None = None


def generate_holmsen_instance(seed: int, params: HolmsenParams = HolmsenParams()) -> InstanceSpec:
    """Planar family pierced by a line; sets grow about their pierce points
    until the hull-crossing condition holds."""
    if params.r not in (0, 1):
        raise GeneratorError("r must be 0 or 1 in the plane")
    m = matroid_from_spec(params.matroid) if params.matroid else None
    n = len(m.ground) if m is not None else params.n
    spec = generate_pierced_instance(seed, PiercedParams(Field.R, 2, 1, params.r, n, spread=1))
    inst = spec.instance
    if m is None:
        m = UniformMatroid(min(n, params.r + 2), n)
    inst.matroid = m
    centers = {i: inst.polytopes[i].centroid() for i in range(n)}
    _inflate_until(inst, check_holmsen, centers)
    spec.provenance = {"generator": "holmsen", "seed": seed, "params": {"r": params.r, "n": n}}
    return spec


def planted_refutation_instance() -> InstanceSpec:
    """Three singletons at (0,0), (1,5), (2,0) with collinear images 0, 1, 2."""
    pts = [(0, 0), (1, 5), (2, 0)]
    inst = Instance(
        Field.R, 2, 1, 1, [Polytope([p]) for p in pts], UniformMatroid(3, 3), {i: (i,) for i in range(3)}
    )
    return InstanceSpec(inst, {"generator": "planted-refutation"})
