"""Matroids given by independence oracles.

Four concrete backends are provided (uniform, partition, linear, explicit
bases) together with the operations needed on the topology side: deletion,
link of a vertex and parallel extension.  Element ids are integers; derived
matroids keep the labels of their parent except for parallel extensions,
which relabel copies consecutively.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

from tvlab.core import Field, linalg, to_field


class MatroidError(ValueError):
    pass


class Matroid:
    """Base class: a ground set plus a cached independence oracle."""

    backend = "oracle"

    def __init__(self, ground: Iterable[int], oracle: Callable[[frozenset], bool] | None = None):
        self.ground: tuple[int, ...] = tuple(sorted(set(ground)))
        self._ground_set = frozenset(self.ground)
        self._oracle = oracle
        self._cache: dict[frozenset, bool] = {}
        self._rank: int | None = None

    def _independent(self, s: frozenset) -> bool:
        if self._oracle is None:
            raise NotImplementedError
        return self._oracle(s)

    def _check(self, s: Iterable[int]) -> frozenset:
        s = frozenset(s)
        extra = s - self._ground_set
        if extra:
            raise MatroidError(f"unknown element(s) {sorted(extra)}")
        return s

    def is_independent(self, s: Iterable[int]) -> bool:
        s = self._check(s)
        hit = self._cache.get(s)
        if hit is None:
            hit = True if not s else bool(self._independent(s))
            self._cache[s] = hit
        return hit

    def rank(self, s: Iterable[int] | None = None) -> int:
        """Greedy rank, scanning elements in ascending id order."""
        if s is None:
            if self._rank is None:
                self._rank = self._greedy(self.ground)
            return self._rank
        return self._greedy(sorted(self._check(s)))

    def _greedy(self, elems: Sequence[int]) -> int:
        basis: frozenset = frozenset()
        for e in elems:
            cand = basis | {e}
            if self.is_independent(cand):
                basis = cand
        return len(basis)

    def loops(self) -> list[int]:
        return [e for e in self.ground if not self.is_independent((e,))]

    def __len__(self) -> int:
        return len(self.ground)

    def __repr__(self):
        return f"<{type(self).__name__} n={len(self.ground)} rank={self.rank()}>"


class UniformMatroid(Matroid):
    backend = "uniform"

    def __init__(self, rank: int, n: int):
        if rank < 0 or rank > n:
            raise MatroidError(f"invalid uniform matroid U({rank},{n})")
        if rank == 0 and n > 0:
            raise MatroidError("uniform matroid of rank 0 consists of loops")
        super().__init__(range(n))
        self.r = rank
        self.n = n

    def _independent(self, s):
        return len(s) <= self.r

    def rank(self, s=None):
        if s is None:
            return self.r
        return min(len(self._check(s)), self.r)

    def __repr__(self):
        return f"U({self.r},{self.n})"


class PartitionMatroid(Matroid):
    """At most one element from each class (capacity 1 per class)."""

    backend = "partition"

    def __init__(self, classes: Sequence[Sequence[int]]):
        classes = [tuple(sorted(c)) for c in classes]
        if any(len(c) == 0 for c in classes):
            raise MatroidError("partition classes must be nonempty")
        flat = [e for c in classes for e in c]
        if len(set(flat)) != len(flat):
            raise MatroidError("partition classes overlap")
        if sorted(flat) != list(range(len(flat))):
            raise MatroidError("partition classes must cover 0..n-1")
        super().__init__(flat)
        self.classes = tuple(classes)
        self._color = {e: i for i, c in enumerate(classes) for e in c}

    def color(self, e: int) -> int:
        return self._color[e]

    def _independent(self, s):
        colors = [self._color[e] for e in s]
        return len(colors) == len(set(colors))

    def rank(self, s=None):
        if s is None:
            return len(self.classes)
        return len({self._color[e] for e in self._check(s)})


class LinearMatroid(Matroid):
    """Column matroid of a matrix over Q or Q(i)."""

    backend = "linear"

    def __init__(self, columns: Sequence[Sequence], field: Field = Field.R):
        self.field = field
        self.columns = tuple(tuple(to_field(x, field) for x in col) for col in columns)
        if len({len(c) for c in self.columns}) > 1:
            raise MatroidError("columns must have equal length")
        super().__init__(range(len(self.columns)))

    def _independent(self, s):
        vecs = [self.columns[e] for e in sorted(s)]
        return linalg.rank(vecs, self.field) == len(vecs)


class ExplicitMatroid(Matroid):
    """Independent sets are the subsets of the listed bases."""

    backend = "explicit"

    def __init__(self, n: int, bases: Iterable[Iterable[int]]):
        self.bases = tuple(sorted({tuple(sorted(b)) for b in bases}))
        if any(e < 0 or e >= n for b in self.bases for e in b):
            raise MatroidError("basis element outside ground set")
        super().__init__(range(n))
        self.n = n
        self._basis_sets = [frozenset(b) for b in self.bases]

    def _independent(self, s):
        return any(s <= b for b in self._basis_sets)


class _Derived(Matroid):
    backend = "derived"


def deletion(m: Matroid, e: int) -> Matroid:
    """``M \\ e``: same oracle on ``ground - {e}``."""
    m._check((e,))
    out = _Derived((x for x in m.ground if x != e), m.is_independent)
    out.parent, out.operation = m, ("delete", e)
    return out


def link(m: Matroid, e: int) -> Matroid:
    """``link_M(e)``: sets ``s`` avoiding ``e`` with ``s + e`` independent."""
    m._check((e,))
    if not m.is_independent((e,)):
        raise MatroidError(f"element {e} is a loop; its link is undefined")
    out = _Derived((x for x in m.ground if x != e), lambda s: m.is_independent(s | {e}))
    out.parent, out.operation = m, ("link", e)
    return out


class ParallelExtension(Matroid):
    """Each element ``i`` replaced by ``multiplicity[i]`` parallel copies.

    Copies of element ``ground[k]`` get consecutive new ids, in ground order.
    ``origin[new_id]`` maps back to the original element.
    """

    backend = "parallel"

    def __init__(self, base: Matroid, multiplicities: Mapping[int, int] | Sequence[int]):
        if not isinstance(multiplicities, Mapping):
            if len(multiplicities) != len(base.ground):
                raise MatroidError("one multiplicity per ground element is required")
            multiplicities = dict(zip(base.ground, multiplicities))
        unknown = set(multiplicities) - set(base.ground)
        if unknown:
            raise MatroidError(f"unknown element(s) {sorted(unknown)}")
        mult = {e: int(multiplicities.get(e, 1)) for e in base.ground}
        if any(c < 1 for c in mult.values()):
            raise MatroidError("multiplicities must be >= 1")
        loops = [e for e in base.ground if mult[e] > 1 and not base.is_independent((e,))]
        if loops:
            raise MatroidError(f"cannot extend loops {loops}")
        origin = [e for e in base.ground for _ in range(mult[e])]
        super().__init__(range(len(origin)))
        self.base = base
        self.multiplicities = mult
        self.origin = tuple(origin)

    def _independent(self, s):
        proj = {self.origin[x] for x in s}
        return len(proj) == len(s) and self.base.is_independent(proj)

    def rank(self, s=None):
        if s is None:
            return self.base.rank()
        return self.base.rank({self.origin[x] for x in self._check(s)})


def parallel_extension(m: Matroid, multiplicities) -> ParallelExtension:
    return ParallelExtension(m, multiplicities)


def enumerate_independent_sets(m: Matroid, max_card: int) -> list[tuple[int, ...]]:
    """Nonempty independent sets of size <= max_card, by size then lexicographically."""
    if max_card < 0:
        raise MatroidError("max_card must be >= 0")
    out: list[tuple[int, ...]] = []
    layer = [()]
    for size in range(1, max_card + 1):
        nxt = []
        for s in layer:
            start = s[-1] if s else None
            for e in m.ground:
                if start is not None and e <= start:
                    continue
                cand = s + (e,)
                if m.is_independent(cand):
                    nxt.append(cand)
        if not nxt:
            break
        nxt.sort()
        out.extend(nxt)
        layer = nxt
    return out


def bases(m: Matroid) -> list[tuple[int, ...]]:
    r = m.rank()
    if r == 0:
        return [()]
    return [s for s in enumerate_independent_sets(m, r) if len(s) == r]


@dataclass
class MatroidCheckReport:
    passed: bool
    witness: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    axiom: str | None = None
    detail: list[str] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"


def verify_matroid_axioms(m: Matroid, cap: int = 12) -> MatroidCheckReport:
    """Brute-force check of the independence axioms.

    Checks that the empty set is independent, downward closure, basis
    exchange among maximal independent sets, and augmentation for all pairs.
    """
    n = len(m.ground)
    if n > cap:
        raise MatroidError(f"ground set of size {n} exceeds cap {cap}")
    indep = [s for k in range(n + 1) for s in combinations(m.ground, k) if m.is_independent(s)]
    if () not in indep:
        return MatroidCheckReport(False, ((), ()), "empty")
    fam = set(indep)
    for s in indep:
        for i in range(len(s)):
            sub = s[:i] + s[i + 1 :]
            if sub not in fam:
                return MatroidCheckReport(False, (s, sub), "hereditary")
    maximal = [s for s in indep if not any(tuple(sorted(s + (e,))) in fam for e in m.ground if e not in s)]
    maximal_set = set(maximal)
    for b1 in maximal:
        for b2 in maximal:
            for x in set(b1) - set(b2):
                rest = set(b1) - {x}
                if not any(tuple(sorted(rest | {y})) in maximal_set for y in set(b2) - set(b1)):
                    return MatroidCheckReport(False, (b1, b2), "basis-exchange")
    # with downward closure, augmenting from sets one element larger suffices
    by_size: dict[int, list[tuple[int, ...]]] = {}
    for s in indep:
        by_size.setdefault(len(s), []).append(s)
    for a in indep:
        for b in by_size.get(len(a) + 1, ()):
            if not any(tuple(sorted(set(a) | {y})) in fam for y in set(b) - set(a)):
                return MatroidCheckReport(False, (a, b), "augmentation")
    return MatroidCheckReport(True, detail=[f"{len(indep)} independent sets checked"])


def matroid_from_spec(spec: Mapping) -> Matroid:
    backend = spec["backend"]
    if backend == "uniform":
        return UniformMatroid(int(spec["rank"]), int(spec["n"]))
    if backend == "partition":
        return PartitionMatroid(spec["classes"])
    if backend == "linear":
        from tvlab.core import parse_scalar

        fld = Field(spec.get("field", "R"))
        cols = [[parse_scalar(x, fld) for x in col] for col in spec["columns"]]
        return LinearMatroid(cols, fld)
    if backend == "explicit":
        return ExplicitMatroid(int(spec["n"]), spec["bases"])
    raise MatroidError(f"unknown matroid backend {backend!r}")


def matroid_to_spec(m: Matroid) -> dict:
    from tvlab.core import format_scalar

    if isinstance(m, UniformMatroid):
        return {"backend": "uniform", "rank": m.r, "n": m.n}
    if isinstance(m, PartitionMatroid):
        return {"backend": "partition", "classes": [list(c) for c in m.classes]}
    if isinstance(m, LinearMatroid):
        return {
            "backend": "linear",
            "field": m.field.value,
            "columns": [[format_scalar(x) for x in col] for col in m.columns],
        }
    if isinstance(m, ExplicitMatroid):
        return {"backend": "explicit", "n": m.n, "bases": [list(b) for b in m.bases]}
    # derived matroids serialize through their bases on a relabeled ground set
    relabel = {e: i for i, e in enumerate(m.ground)}
    return {
        "backend": "explicit",
        "n": len(m.ground),
        "bases": [[relabel[e] for e in b] for b in bases(m)],
    }
