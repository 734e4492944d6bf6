"""Simplicial complexes, matroidal joins of finite discrete spaces, and
reduced integral homology.

For finite discrete fibres the matroidal join over ``M`` is the subcomplex
of the join ``X_0 * ... * X_n`` whose simplices pick one point from each
``X_i`` with ``i`` ranging over an independent set.  That is the
independence complex of an iterated parallel extension of ``M``, which
:func:`matroidal_join_discrete` asserts on construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Mapping, Sequence

from tvlab.core.snf import sparse_invariant_factors
from tvlab.matroid import Matroid, MatroidError, bases, parallel_extension


class ComplexError(ValueError):
    pass


class SimplicialComplex:
    """A finite simplicial complex stored by its facets.

    Facets are reduced to the inclusion-maximal ones on construction.  Faces
    of each dimension are generated lazily and kept in lexicographic order.
    """

    def __init__(self, facets: Iterable[Iterable[int]], vertices: Iterable[int] | None = None):
        fs = {tuple(sorted(set(f))) for f in facets}
        if () in fs:
            fs.discard(())
        if not fs:
            raise ComplexError("a complex needs at least one nonempty facet")
        kept: list[tuple[int, ...]] = []
        larger: list[frozenset] = []
        for size in sorted({len(f) for f in fs}, reverse=True):
            layer = [f for f in fs if len(f) == size]
            layer = [f for f in layer if not any(frozenset(f) < k for k in larger)]
            kept.extend(layer)
            larger.extend(frozenset(f) for f in layer)
        self.facets: tuple[tuple[int, ...], ...] = tuple(sorted(kept))
        covered = {v for f in self.facets for v in f}
        if vertices is None:
            self.vertices = tuple(sorted(covered))
        else:
            self.vertices = tuple(sorted(set(vertices)))
            if set(self.vertices) != covered:
                raise ComplexError("every vertex must lie in some facet")
        self.dim = max(len(f) for f in self.facets) - 1
        self._faces: dict[int, list[tuple[int, ...]]] | None = None

    def faces(self, q: int) -> list[tuple[int, ...]]:
        if self._faces is None:
            acc: dict[int, set] = {i: set() for i in range(self.dim + 1)}
            for f in self.facets:
                for k in range(1, len(f) + 1):
                    acc[k - 1].update(combinations(f, k))
            self._faces = {i: sorted(s) for i, s in acc.items()}
        return self._faces.get(q, [])

    def f_vector(self) -> list[int]:
        return [len(self.faces(q)) for q in range(self.dim + 1)]

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.facets == other.facets and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.facets)

    def __repr__(self):
        return f"SimplicialComplex(dim={self.dim}, vertices={len(self.vertices)}, facets={len(self.facets)})"

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "facets": [list(f) for f in self.facets]}

    @classmethod
    def from_json(cls, data: Mapping) -> "SimplicialComplex":
        return cls(data["facets"], data.get("vertices"))


@dataclass
class HomologyProfile:
    """Reduced integral homology: ``betti[i]`` and torsion factors per degree."""

    betti: list[int]
    torsion: list[tuple[int, ...]]
    f_vector: list[int] = field(default_factory=list)

    def is_trivial(self, degree: int) -> bool:
        return self.betti[degree] == 0 and not self.torsion[degree]

    def euler_characteristic(self) -> int:
        """Reduced Euler characteristic from the Betti numbers."""
        return sum((-1) ** i * b for i, b in enumerate(self.betti))

    def describe(self) -> list[str]:
        out = []
        for i, (b, t) in enumerate(zip(self.betti, self.torsion)):
            parts = ([f"Z^{b}" if b > 1 else "Z"] if b else []) + [f"Z/{x}" for x in t]
            out.append(f"H~{i} = {' + '.join(parts) if parts else '0'}")
        return out


def independence_complex(m: Matroid) -> SimplicialComplex:
    """Complex of independent sets; its facets are the bases."""
    if m.loops():
        raise MatroidError(f"matroid has loops {m.loops()}")
    bs = bases(m)
    if len({len(b) for b in bs}) != 1:
        raise MatroidError("maximal independent sets differ in size")
    return SimplicialComplex(bs, m.ground)


def matroidal_join_discrete(m: Matroid, sizes: Sequence[int] | Mapping[int, int]) -> SimplicialComplex:
    """Matroidal join of discrete spaces with ``sizes[i]`` points over element i.

    The point ``x`` of the space over ground element ``ground[k]`` becomes the
    vertex ``offset[k] + x``, matching the relabeling of
    :class:`~tvlab.matroid.ParallelExtension`.
    """
    if isinstance(sizes, Mapping):
        sizes = [int(sizes.get(e, 1)) for e in m.ground]
    sizes = list(sizes)
    if len(sizes) != len(m.ground):
        raise ComplexError("one size per ground element is required")
    if any(s < 1 for s in sizes):
        raise ComplexError("sizes must be positive")
    if m.loops():
        raise MatroidError(f"matroid has loops {m.loops()}")
    offset = {}
    acc = 0
    for e, s in zip(m.ground, sizes):
        offset[e] = acc
        acc += s
    size_of = dict(zip(m.ground, sizes))
    facets = []
    for b in bases(m):
        for pick in product(*(range(size_of[e]) for e in b)):
            facets.append(tuple(offset[e] + x for e, x in zip(b, pick)))
    join = SimplicialComplex(facets, range(acc))
    ext = independence_complex(parallel_extension(m, sizes))
    if join.facets != ext.facets:
        raise AssertionError("matroidal join differs from the parallel extension's complex")
    return join


def boundary_columns(k: SimplicialComplex, q: int) -> list[dict[int, int]]:
    """Columns of the boundary map C_q -> C_{q-1} (sign (-1)^position).

    ``q = 0`` gives the augmentation map to Z.
    """
    faces = k.faces(q)
    if q == 0:
        return [{0: 1} for _ in faces]
    index = {f: i for i, f in enumerate(k.faces(q - 1))}
    cols = []
    for f in faces:
        col = {}
        for pos in range(len(f)):
            col[index[f[:pos] + f[pos + 1 :]]] = -1 if pos % 2 else 1
        cols.append(col)
    return cols


def boundary_matrix(k: SimplicialComplex, q: int) -> list[list[int]]:
    nrows = 1 if q == 0 else len(k.faces(q - 1))
    cols = boundary_columns(k, q)
    dense = [[0] * len(cols) for _ in range(nrows)]
    for j, col in enumerate(cols):
        for i, v in col.items():
            dense[i][j] = v
    return dense


def reduced_homology(k: SimplicialComplex, max_degree: int | None = None) -> HomologyProfile:
    """Reduced homology with Z coefficients in degrees ``0..dim K``.

    With ``max_degree`` set, only degrees up to that bound are computed (the
    Euler characteristic cross-check is skipped in that case).
    """
    top = k.dim if max_degree is None else min(k.dim, max_degree)
    counts = [len(k.faces(q)) for q in range(k.dim + 1)]
    ranks: dict[int, int] = {}
    tors: dict[int, tuple[int, ...]] = {}
    for q in range(0, min(top + 1, k.dim) + 1):
        factors = sparse_invariant_factors(boundary_columns(k, q))
        ranks[q] = len(factors)
        tors[q] = tuple(f for f in factors if f > 1)
    ranks.setdefault(k.dim + 1, 0)
    tors.setdefault(k.dim + 1, ())
    betti, torsion = [], []
    for q in range(top + 1):
        betti.append(counts[q] - ranks[q] - ranks[q + 1])
        torsion.append(tors[q + 1])
    prof = HomologyProfile(betti, torsion, counts)
    if max_degree is None:
        chi = sum((-1) ** q * c for q, c in enumerate(counts)) - 1
        if chi != prof.euler_characteristic():
            raise AssertionError(f"Euler characteristic mismatch: faces give {chi}, homology {prof.euler_characteristic()}")
    return prof


def homological_connectivity(k: SimplicialComplex, profile: HomologyProfile | None = None) -> int:
    """Largest ``c`` with vanishing reduced homology in degrees ``<= c``.

    A disconnected complex gives -1.  When every degree vanishes the complex
    is acyclic and ``dim K`` is returned, read as "at least dim K".
    """
    profile = profile or reduced_homology(k)
    for i in range(len(profile.betti)):
        if not profile.is_trivial(i):
            return i - 1
    return k.dim


def join_complexes(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    """Simplicial join; vertices of ``b`` are shifted past those of ``a``."""
    shift = max(a.vertices) + 1 - min(b.vertices)
    facets = [fa + tuple(v + shift for v in fb) for fa in a.facets for fb in b.facets]
    return SimplicialComplex(facets)


def full_simplex(n: int) -> SimplicialComplex:
    return SimplicialComplex([tuple(range(n))])


def sphere_boundary(n: int) -> SimplicialComplex:
    """Boundary of the (n-1)-simplex on n vertices, an (n-2)-sphere."""
    return SimplicialComplex(combinations(range(n), n - 1))


def rp2_minimal() -> SimplicialComplex:
    """The six-vertex, ten-triangle real projective plane."""
    return SimplicialComplex(
        [
            (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
            (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5),
        ]
    )
