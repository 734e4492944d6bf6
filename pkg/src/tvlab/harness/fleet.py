"""Built-in matroid fleet for the topology and parallel-extension suites,
and size vectors reduced modulo matroid automorphisms."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, permutations, product

import numpy as np

from tvlab.core import Field, QComplex, linalg
from tvlab.matroid import ExplicitMatroid, LinearMatroid, Matroid, PartitionMatroid, UniformMatroid, bases


def _integer_partitions(n: int, max_parts: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    if max_parts == 0:
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _integer_partitions(n - first, max_parts - 1, first):
            yield (first,) + rest


def _partition_from_sizes(sizes) -> PartitionMatroid:
    classes, acc = [], 0
    for s in sizes:
        classes.append(list(range(acc, acc + s)))
        acc += s
    return PartitionMatroid(classes)


FANO_LINES = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]


def _rank3_from_lines(n: int, lines) -> ExplicitMatroid:
    """Rank-3 matroid whose dependent triples are exactly the given lines."""
    from itertools import combinations

    dep = {frozenset(l) for l in lines}
    return ExplicitMatroid(n, [t for t in combinations(range(n), 3) if frozenset(t) not in dep])


def vamos() -> ExplicitMatroid:
    from itertools import combinations

    pairs = [(0, 1), (2, 3), (4, 5), (6, 7)]
    planes = {frozenset(pairs[a] + pairs[b]) for a, b in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]}
    return ExplicitMatroid(8, [q for q in combinations(range(8), 4) if frozenset(q) not in planes])


def _q(*xs):
    return [Fraction(x) for x in xs]


LINEAR_FLEET = {
    "K4-graphic": [_q(1, 0, 0), _q(0, 1, 0), _q(0, 0, 1), _q(1, -1, 0), _q(1, 0, -1), _q(0, 1, -1)],
    "rank2-parallel": [_q(1, 0), _q(2, 0), _q(0, 1), _q(0, 3), _q(1, 1)],
    "rank3-line-plus": [_q(1, 0, 0), _q(0, 1, 0), _q(1, 1, 0), _q(0, 0, 1), _q(1, 0, 1)],
    "rank3-two-lines": [_q(1, 0, 0), _q(0, 1, 0), _q(1, 1, 0), _q(0, 0, 1), _q(1, 0, 1), _q(2, 0, 1)],
    "rank4-circuit5": [_q(1, 0, 0, 0), _q(0, 1, 0, 0), _q(0, 0, 1, 0), _q(0, 0, 0, 1), _q(1, 1, 1, 1)],
    "rank4-coparallel": [_q(1, 0, 0, 0), _q(0, 1, 0, 0), _q(0, 0, 1, 0), _q(0, 0, 0, 1), _q(1, 1, 0, 0), _q(0, 0, 1, 1)],
    "rank3-with-loop": [_q(1, 0, 0), _q(0, 1, 0), _q(0, 0, 1), _q(0, 0, 0), _q(1, 1, 1)],
    "rank2-with-loops": [_q(0, 0), _q(1, 0), _q(0, 1), _q(0, 0)],
}

I = QComplex(0, 1)
COMPLEX_FLEET = {
    "C-rank2-five": [[QComplex(1), QComplex(0)], [QComplex(0), QComplex(1)], [QComplex(1), QComplex(1)], [QComplex(1), I], [QComplex(1), -I]],
    "C-rank3-six": [
        [QComplex(1), QComplex(0), QComplex(0)],
        [QComplex(0), QComplex(1), QComplex(0)],
        [QComplex(0), QComplex(0), QComplex(1)],
        [QComplex(1), I, QComplex(0)],
        [QComplex(0), QComplex(1), I],
        [I, QComplex(0), QComplex(1)],
    ],
}


def _seeded_linear(seed: int) -> LinearMatroid:
    rng = np.random.default_rng(seed)
    n = int(rng.integers(4, 7))
    r = int(rng.integers(2, 5))
    while True:
        cols = [[Fraction(int(rng.integers(-1, 2))) for _ in range(r)] for _ in range(n)]
        if all(any(c) for c in cols) and linalg.rank(cols, Field.R) == r:
            return LinearMatroid(cols, Field.R)


def builtin_fleet(n_random_linear: int = 12) -> list[tuple[str, Matroid]]:
    """Uniform and partition matroids with at most 8 elements and rank at most
    4, plus a fixed set of linear and explicit matroids (two with loops)."""
    out: list[tuple[str, Matroid]] = []
    for r in range(1, 5):
        for n in range(r, 9):
            out.append((f"U({r},{n})", UniformMatroid(r, n)))
    for n in range(1, 9):
        for sizes in _integer_partitions(n, 4):
            out.append((f"P{list(sizes)}", _partition_from_sizes(sizes)))
    for name, cols in LINEAR_FLEET.items():
        out.append((name, LinearMatroid(cols, Field.R)))
    for name, cols in COMPLEX_FLEET.items():
        out.append((name, LinearMatroid(cols, Field.C)))
    for s in range(n_random_linear):
        out.append((f"linear-seed{s}", _seeded_linear(s)))
    out.append(("fano", _rank3_from_lines(7, FANO_LINES)))
    out.append(("non-fano", _rank3_from_lines(7, FANO_LINES[:-1])))
    out.append(("vamos", vamos()))
    return out


def automorphisms(m: Matroid) -> list[tuple[int, ...]]:
    """All permutations of the ground set that map bases to bases (brute force)."""
    n = len(m.ground)
    if tuple(m.ground) != tuple(range(n)):
        raise ValueError("automorphisms need ground set 0..n-1")
    bs = {frozenset(b) for b in bases(m)}
    loops = set(m.loops())
    out = []
    for perm in permutations(range(n)):
        if any((perm[e] in loops) != (e in loops) for e in range(n)):
            continue
        if all(frozenset(perm[e] for e in b) in bs for b in bs):
            out.append(perm)
    return out


def size_vector_orbits(m: Matroid, max_size: int = 3) -> list[tuple[int, ...]]:
    """One size vector (entries 1..max_size) per orbit of the automorphism group.

    Isomorphic matroidal joins have isomorphic homology, so a representative
    per orbit covers every vector.
    """
    n = len(m.ground)
    values = range(1, max_size + 1)
    if isinstance(m, UniformMatroid):
        return list(combinations_with_replacement(values, n))
    if isinstance(m, PartitionMatroid):
        return sorted({_partition_canonical(m.classes, v) for v in product(values, repeat=n)})
    group = automorphisms(m)
    reps = set()
    for v in product(values, repeat=n):
        # (g.v)[g(e)] = v[e]
        best = None
        for g in group:
            w = [0] * n
            for e in range(n):
                w[g[e]] = v[e]
            w = tuple(w)
            if best is None or w < best:
                best = w
        reps.add(best)
    return sorted(reps)


def _partition_canonical(classes, v) -> tuple[int, ...]:
    n = sum(len(c) for c in classes)
    out = [0] * n
    by_size: dict[int, list] = {}
    for c in classes:
        by_size.setdefault(len(c), []).append(c)
    for group in by_size.values():
        vals = sorted(tuple(sorted(v[e] for e in c)) for c in group)
        for c, t in zip(group, vals):
            for e, x in zip(c, t):
                out[e] = x
    return tuple(out)
