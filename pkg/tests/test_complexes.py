import random
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tvlab.complexes import (
    ComplexError,
    SimplicialComplex,
    homological_connectivity,
    independence_complex,
    join_complexes,
    matroidal_join_discrete,
    reduced_homology,
    rp2_minimal,
    sphere_boundary,
)
from tvlab.matroid import MatroidError, LinearMatroid, PartitionMatroid, UniformMatroid, parallel_extension


def rational_betti(facets):
    """Reduced Betti numbers over Q from dense float boundary ranks."""
    faces = set()
    for f in facets:
        f = tuple(sorted(f))
        for k in range(1, len(f) + 1):
            faces.update(combinations(f, k))
    by_dim = {}
    for f in faces:
        by_dim.setdefault(len(f) - 1, []).append(f)
    top = max(by_dim)
    ranks = {}
    for q in range(0, top + 1):
        cols = sorted(by_dim[q])
        if q == 0:
            mat = np.ones((1, len(cols)))
        else:
            rows = {f: i for i, f in enumerate(sorted(by_dim[q - 1]))}
            mat = np.zeros((len(rows), len(cols)))
            for j, f in enumerate(cols):
                for pos in range(len(f)):
                    mat[rows[f[:pos] + f[pos + 1 :]], j] = (-1) ** pos
        ranks[q] = int(np.linalg.matrix_rank(mat))
    ranks[top + 1] = 0
    return [len(by_dim[q]) - ranks[q] - ranks[q + 1] for q in range(top + 1)]


def test_independence_complex_examples():
    assert independence_complex(UniformMatroid(2, 3)).facets == ((0, 1), (0, 2), (1, 2))
    assert independence_complex(UniformMatroid(3, 3)).facets == ((0, 1, 2),)
    assert independence_complex(PartitionMatroid([[0, 1], [2]])).facets == ((0, 2), (1, 2))
    with pytest.raises(MatroidError):
        independence_complex(LinearMatroid([[0, 0], [1, 0]]))


def test_matroidal_join_examples():
    circle = matroidal_join_discrete(UniformMatroid(2, 2), [2, 2])
    assert len(circle.facets) == 4
    assert reduced_homology(circle).betti == [0, 1]
    points = matroidal_join_discrete(UniformMatroid(1, 2), [2, 2])
    assert reduced_homology(points).betti == [3]
    k = matroidal_join_discrete(UniformMatroid(2, 3), [2, 1, 1])
    assert len(k.vertices) == 4 and len(k.facets) == 5
    assert reduced_homology(k).betti == [0, 2]


def test_homology_examples():
    assert reduced_homology(sphere_boundary(3)).betti == [0, 1]
    solid = SimplicialComplex([(0, 1, 2)])
    prof = reduced_homology(solid)
    assert prof.betti == [0, 0, 0] and prof.torsion == [(), (), ()]
    rp2 = reduced_homology(rp2_minimal())
    assert rp2.betti == [0, 0, 0]
    assert rp2.torsion == [(), (2,), ()]


def test_connectivity_examples():
    assert homological_connectivity(SimplicialComplex([(0, 1, 2)])) == 2
    assert homological_connectivity(sphere_boundary(3)) == 0
    assert homological_connectivity(SimplicialComplex([(0,), (1,), (2,), (3,)])) == -1


def test_complex_validation():
    with pytest.raises(ComplexError):
        SimplicialComplex([])
    with pytest.raises(ComplexError):
        SimplicialComplex([(0, 1)], vertices=[0, 1, 2])
    k = SimplicialComplex([(0, 1), (0, 1, 2), (3,)])
    assert k.facets == ((0, 1, 2), (3,))
    assert SimplicialComplex.from_json(k.to_json()) == k


@st.composite
def random_complex(draw):
    n = draw(st.integers(1, 10))
    facets = draw(st.lists(st.sets(st.integers(0, n - 1), min_size=1, max_size=5), min_size=1, max_size=12))
    return [sorted(f) for f in facets]


@given(random_complex())
def test_homology_matches_rational_oracle(facets):
    prof = reduced_homology(SimplicialComplex(facets))
    assert prof.betti == rational_betti(facets)


def test_join_betti_formula():
    # a circle joined with a circle is a 3-sphere; with a point it is a disk
    s1 = sphere_boundary(3)
    assert reduced_homology(join_complexes(s1, s1)).betti == [0, 0, 0, 1]
    two_points = SimplicialComplex([(0,), (1,)])
    assert reduced_homology(join_complexes(s1, two_points)).betti == [0, 0, 1]
    assert reduced_homology(join_complexes(s1, SimplicialComplex([(0,)]))).betti == [0, 0, 0]


@pytest.mark.parametrize("r,n", [(1, 3), (2, 4), (3, 5), (3, 6), (4, 6)])
def test_uniform_joins_are_connected(r, n):
    rng = random.Random(r * 10 + n)
    for _ in range(5):
        sizes = [rng.randint(1, 3) for _ in range(n)]
        m = UniformMatroid(r, n)
        k = matroidal_join_discrete(m, sizes)
        assert k == independence_complex(parallel_extension(m, sizes))
        assert homological_connectivity(k) >= r - 2


def test_euler_characteristic_checked():
    prof = reduced_homology(rp2_minimal())
    chi = sum((-1) ** q * c for q, c in enumerate(prof.f_vector)) - 1
    assert chi == prof.euler_characteristic()
