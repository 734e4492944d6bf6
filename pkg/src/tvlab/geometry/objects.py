"""Polytopes, flats and transversal instances over R or C."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from tvlab.core import Field, QComplex, Scalar, linalg, re_im, to_field
from tvlab.matroid import Matroid, PartitionMatroid

Point = tuple  # tuple of field scalars


class GeometryError(ValueError):
    pass


def realify(point: Sequence[Scalar]) -> tuple[Fraction, ...]:
    """Real coordinates of a point; complex coordinates interleave (Re, Im)."""
    out: list[Fraction] = []
    for x in point:
        if isinstance(x, Fraction) or isinstance(x, int):
            out.append(Fraction(x))
        else:
            out.extend(re_im(x))
    return tuple(out)


class Polytope:
    """Convex hull of finitely many points in F^d (a V-polytope).

    Duplicate vertices are dropped; the order of first appearance is kept.
    """

    def __init__(self, vertices: Sequence[Sequence], field: Field = Field.R):
        self.field = Field(field)
        pts: list[tuple] = []
        seen = set()
        for v in vertices:
            p = tuple(to_field(x, self.field) for x in v)
            if p not in seen:
                seen.add(p)
                pts.append(p)
        if not pts:
            raise GeometryError("a polytope needs at least one vertex")
        if len({len(p) for p in pts}) != 1:
            raise GeometryError("vertices have different dimensions")
        self.vertices: tuple[tuple, ...] = tuple(pts)
        self.dim = len(pts[0])
        self.real_vertices = tuple(realify(p) for p in pts)

    @property
    def real_dim(self) -> int:
        return self.dim * self.field.real_dim

    def translated(self, offset: Sequence) -> "Polytope":
        return Polytope([[a + b for a, b in zip(v, offset)] for v in self.vertices], self.field)

    def scaled(self, factor, center: Sequence | None = None) -> "Polytope":
        """Homothetic copy about ``center`` (the vertex centroid by default)."""
        c = center if center is not None else self.centroid()
        f = Fraction(factor)
        return Polytope([[ci + f * (x - ci) for x, ci in zip(v, c)] for v in self.vertices], self.field)

    def centroid(self) -> tuple:
        n = len(self.vertices)
        return tuple(sum(col, start=to_field(0, self.field)) / n for col in zip(*self.vertices))

    def __eq__(self, other):
        return isinstance(other, Polytope) and self.field == other.field and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.field, self.vertices))

    def __repr__(self):
        return f"Polytope({self.field.value}^{self.dim}, {len(self.vertices)} vertices)"


@dataclass(frozen=True)
class Flat:
    """Affine F-subspace ``base + span_F(directions)``."""

    field: Field
    base: tuple
    directions: tuple = ()

    def __post_init__(self):
        fld = Field(self.field)
        object.__setattr__(self, "field", fld)
        object.__setattr__(self, "base", tuple(to_field(x, fld) for x in self.base))
        dirs = tuple(tuple(to_field(x, fld) for x in d) for d in self.directions)
        object.__setattr__(self, "directions", dirs)
        if any(len(d) != len(self.base) for d in dirs):
            raise GeometryError("direction and base dimensions differ")
        if len(dirs) > len(self.base):
            raise GeometryError("more directions than the ambient dimension")
        if dirs and linalg.rank(dirs, fld) != len(dirs):
            raise GeometryError("flat directions are linearly dependent")

    @property
    def k(self) -> int:
        return len(self.directions)

    @property
    def dim(self) -> int:
        return len(self.base)

    def real_directions(self) -> list[tuple[Fraction, ...]]:
        """Real spanning set: each complex direction w contributes w and i*w."""
        out = [realify(d) for d in self.directions]
        if self.field is Field.C:
            out += [realify([x * QComplex(0, 1) for x in d]) for d in self.directions]
        return out

    def point(self, coeffs: Sequence) -> tuple:
        pt = list(self.base)
        for c, d in zip(coeffs, self.directions):
            c = to_field(c, self.field)
            pt = [p + c * x for p, x in zip(pt, d)]
        return tuple(pt)


@dataclass
class Instance:
    """A family of polytopes with a matroid and a map ``phi`` into F^r.

    When ``coloring`` is given the matroid is the partition matroid of the
    color classes.
    """

    field: Field
    d: int
    k: int
    r: int
    polytopes: list[Polytope]
    matroid: Matroid
    phi: dict[int, tuple] = field(default_factory=dict)
    coloring: list[list[int]] | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.field = Field(self.field)
        if not 0 <= self.r <= self.k < self.d:
            raise GeometryError(f"need 0 <= r <= k < d, got r={self.r} k={self.k} d={self.d}")
        for p in self.polytopes:
            if p.field is not self.field or p.dim != self.d:
                raise GeometryError("polytope field/dimension does not match the instance")
        n = len(self.polytopes)
        if tuple(self.matroid.ground) != tuple(range(n)):
            raise GeometryError("matroid ground set must be 0..n-1 for n polytopes")
        if self.coloring is not None:
            classes = [sorted(c) for c in self.coloring]
            if not isinstance(self.matroid, PartitionMatroid) or [list(c) for c in self.matroid.classes] != classes:
                raise GeometryError("coloring must induce the partition matroid")
            self.coloring = classes
        phi = {}
        for i, v in self.phi.items():
            v = tuple(to_field(x, self.field) for x in v)
            if len(v) != self.r:
                raise GeometryError(f"phi({i}) has length {len(v)}, expected r={self.r}")
            phi[int(i)] = v
        if self.r == 0:
            phi = {i: () for i in range(n)}
        self.phi = phi

    @property
    def n(self) -> int:
        return len(self.polytopes)

    @property
    def field_factor(self) -> int:
        return self.field.real_dim

    def bound(self) -> int:
        """The rank bound ``fieldFactor * (d - k) * (r + 1)``."""
        return self.field_factor * (self.d - self.k) * (self.r + 1)

    def phi_of(self, i: int) -> tuple:
        if i not in self.phi:
            raise GeometryError(f"phi is not defined on element {i}")
        return self.phi[i]

    def color_classes(self) -> list[list[int]] | None:
        return self.coloring
