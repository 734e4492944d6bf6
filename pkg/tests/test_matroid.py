from itertools import chain, combinations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tvlab.core import Field, QComplex
from tvlab.harness.fleet import builtin_fleet
from tvlab.matroid import (
    ExplicitMatroid,
    LinearMatroid,
    MatroidError,
    PartitionMatroid,
    UniformMatroid,
    bases,
    deletion,
    enumerate_independent_sets,
    link,
    matroid_from_spec,
    matroid_to_spec,
    parallel_extension,
    verify_matroid_axioms,
)


def subsets(ground):
    ground = list(ground)
    return chain.from_iterable(combinations(ground, k) for k in range(len(ground) + 1))


def brute_rank(m, s):
    return max(len(t) for t in subsets(s) if m.is_independent(t))


def linear_oracle(cols, s):
    if not s:
        return True
    return np.linalg.matrix_rank(np.array([[float(x) for x in cols[e]] for e in s])) == len(s)


FLEET = [m for _, m in builtin_fleet()]


def test_rank_examples():
    assert UniformMatroid(2, 4).rank([0, 1, 2]) == 2
    assert PartitionMatroid([[0, 1], [2]]).rank([0, 1]) == 1
    assert LinearMatroid([[1, 0], [0, 1], [1, 1]]).rank() == 2


def test_deletion_examples():
    d = deletion(UniformMatroid(2, 4), 3)
    u = UniformMatroid(2, 3)
    assert d.ground == (0, 1, 2)
    assert all(d.is_independent(s) == u.is_independent(s) for s in subsets(range(3)))
    assert deletion(PartitionMatroid([[0, 1], [2]]), 2).rank() == 1
    e = deletion(ExplicitMatroid(3, [(0, 1), (0, 2), (1, 2)]), 0)
    assert bases(e) == [(1, 2)]


def test_link_examples():
    l = link(UniformMatroid(2, 3), 0)
    assert l.ground == (1, 2) and l.rank() == 1 and bases(l) == [(1,), (2,)]
    assert bases(link(UniformMatroid(3, 3), 2)) == [(0, 1)]
    cols = [[1, 0], [0, 1], [1, 1]]
    m = LinearMatroid(cols)
    lk = link(m, 0)
    for s in subsets((1, 2)):
        assert lk.is_independent(s) == linear_oracle(cols, (0,) + s)
    with pytest.raises(MatroidError):
        link(LinearMatroid([[0, 0], [1, 0]]), 0)


def test_parallel_extension_examples():
    ext = parallel_extension(UniformMatroid(2, 3), {0: 2})
    assert len(ext.ground) == 4 and ext.rank() == 2
    assert len(bases(ext)) == 5
    copies = [e for e in ext.ground if ext.origin[e] == 0]
    assert tuple(copies) not in bases(ext)
    same = parallel_extension(UniformMatroid(2, 3), [1, 1, 1])
    assert all(same.is_independent(s) == UniformMatroid(2, 3).is_independent(s) for s in subsets(range(3)))
    p = parallel_extension(UniformMatroid(1, 1), [3])
    assert p.rank() == 1 and bases(p) == [(0,), (1,), (2,)]


def test_axiom_checker():
    assert verify_matroid_axioms(UniformMatroid(2, 4)).passed
    bad = verify_matroid_axioms(ExplicitMatroid(4, [(0, 1), (2, 3)]))
    assert not bad.passed and bad.witness == ((0, 1), (2, 3))
    assert verify_matroid_axioms(parallel_extension(UniformMatroid(2, 3), {0: 2})).passed


def test_enumeration_examples():
    assert enumerate_independent_sets(UniformMatroid(1, 2), 2) == [(0,), (1,)]
    assert enumerate_independent_sets(UniformMatroid(2, 3), 1) == [(0,), (1,), (2,)]
    assert enumerate_independent_sets(PartitionMatroid([[0, 1], [2]]), 2) == [(0,), (1,), (2,), (0, 2), (1, 2)]


def test_construction_errors():
    with pytest.raises(MatroidError):
        UniformMatroid(0, 3)
    with pytest.raises(MatroidError):
        PartitionMatroid([[0, 1], [3]])
    with pytest.raises(MatroidError):
        UniformMatroid(2, 3).is_independent([5])
    with pytest.raises(MatroidError):
        parallel_extension(UniformMatroid(2, 3), {0: 0})


@pytest.mark.parametrize("m", FLEET, ids=[n for n, _ in builtin_fleet()])
def test_fleet_rank_monotone_submodular(m):
    ground = m.ground
    if len(ground) > 7:
        ground = ground[:7]
    rk = {s: m.rank(s) for s in subsets(ground)}
    for s, r in rk.items():
        assert r == brute_rank(m, s)
    for a in rk:
        for b in rk:
            union = tuple(sorted(set(a) | set(b)))
            inter = tuple(sorted(set(a) & set(b)))
            assert rk[union] + rk[inter] <= rk[a] + rk[b]
            if set(a) <= set(b):
                assert rk[a] <= rk[b]


@pytest.mark.parametrize("m", FLEET, ids=[n for n, _ in builtin_fleet()])
def test_fleet_axioms(m):
    assert verify_matroid_axioms(m).passed


def test_linear_matches_numeric_rank_oracle():
    cols = [[1, 0, 2], [0, 1, 1], [1, 1, 3], [2, 0, 4], [0, 0, 1]]
    m = LinearMatroid(cols)
    for s in subsets(range(5)):
        assert m.is_independent(s) == linear_oracle(cols, s)


def test_complex_linear_matroid():
    m = LinearMatroid([[QComplex(1), QComplex(0, 1)], [QComplex(0, 1), QComplex(-1)], [QComplex(1), QComplex(1)]], Field.C)
    # second column is i times the first
    assert not m.is_independent([0, 1])
    assert m.is_independent([0, 2])


@given(st.integers(1, 4).flatmap(lambda r: st.tuples(st.just(r), st.integers(max(r, 2), 7))), st.data())
def test_deletions_commute(rn, data):
    r, n = rn
    m = UniformMatroid(r, n)
    a, b = data.draw(st.lists(st.integers(0, n - 1), min_size=2, max_size=2, unique=True))
    x = deletion(deletion(m, a), b)
    y = deletion(deletion(m, b), a)
    assert x.ground == y.ground
    assert all(x.is_independent(s) == y.is_independent(s) for s in subsets(x.ground))


@given(st.integers(1, 3).flatmap(lambda r: st.tuples(st.just(r), st.integers(r, 5))), st.data())
def test_parallel_extension_preserves_rank(rn, data):
    r, n = rn
    mult = data.draw(st.lists(st.integers(1, 3), min_size=n, max_size=n))
    ext = parallel_extension(UniformMatroid(r, n), mult)
    assert ext.rank() == r
    assert len(ext.ground) == sum(mult)


@pytest.mark.parametrize("m", FLEET[::7], ids=[n for n, _ in builtin_fleet()][::7])
def test_spec_round_trip(m):
    back = matroid_from_spec(matroid_to_spec(m))
    assert all(back.is_independent(s) == m.is_independent(s) for s in subsets(m.ground))
