from itertools import combinations

import pytest
from hypothesis import given, settings

from lenscryst.builders import LensParams, build_sigma, cycle_complex
from lenscryst.poset import (
    SimplicialPoset,
    derived_subdivision,
    euler_characteristic,
    f_vector,
    is_pure,
    is_simplicial_complex,
    ridges_in_two_facets,
    validate,
)

from shapes import bigon, complexes, point


def test_point():
    P = point()
    assert validate(P) == []
    assert f_vector(P) == (1,)
    assert euler_characteristic(P) == 1


def test_bigon_is_a_simplicial_poset():
    P = bigon()
    assert validate(P) == []
    assert not is_simplicial_complex(P)
    assert f_vector(P) == (2, 2)


def test_edge_with_one_facet_is_rejected():
    P = SimplicialPoset([0, 0, 1], [(), (), (0,)], [(0,), (1,), (0, 1)])
    assert len(validate(P)) == 1


def test_mismatched_codim2_faces_are_rejected():
    # tetrahedron whose triangle {0,2,3} uses a second copy of edge {2,3}
    T = SimplicialPoset.from_simplices([[0, 1, 2, 3]], labels=False)
    dims, facets, verts = list(T.dims), [list(f) for f in T.facets], [list(v) for v in T.vertices]
    e23 = next(c for c in T.cells(1) if T.vertices[c] == (2, 3))
    dup = len(dims)
    dims.append(1); facets.append([2, 3]); verts.append([2, 3])
    tri = next(c for c in T.cells(2) if T.vertices[c] == (0, 2, 3))
    facets[tri] = [dup if f == e23 else f for f in facets[tri]]
    bad = SimplicialPoset(dims, facets, verts)
    errs = validate(bad)
    assert errs and any("share a ridge" in e for e in errs)


@pytest.mark.parametrize("p", [2, 3, 4, 5])
def test_cycle_f_vector_and_euler(p):
    C = cycle_complex(p)
    assert f_vector(C) == (2 * p, 2 * p)
    assert euler_characteristic(C) == 0


def test_sigma_f_vector_small():
    S = build_sigma(LensParams(2, [1]))
    assert f_vector(S) == (8, 24, 32, 16)
    assert euler_characteristic(S) == 0


def test_purity_and_pseudomanifold():
    S = build_sigma(LensParams(3, [1]))
    assert is_pure(S) and ridges_in_two_facets(S)
    tri = SimplicialPoset.from_simplices([["a", "b", "c"]])
    assert is_pure(tri)
    assert not ridges_in_two_facets(tri)
    # a triangle plus a dangling edge is not pure
    assert not is_pure(SimplicialPoset.from_simplices([["a", "b", "c"], ["c", "d"]]))


def test_derived_of_edge_is_path():
    D = derived_subdivision(SimplicialPoset.from_simplices([["a", "b"]]))
    assert f_vector(D) == (3, 2)
    assert validate(D) == []


def test_derived_of_square_is_octagon():
    D = derived_subdivision(cycle_complex(2))
    assert f_vector(D) == (8, 8)
    assert ridges_in_two_facets(D)


def test_derived_of_sigma_counts_flags():
    S = build_sigma(LensParams(2, [1]))
    D = derived_subdivision(S)
    assert D.f_vector()[-1] == 16 * 24
    assert D.f_vector()[0] == len(S)
    assert is_simplicial_complex(D)


def test_derived_of_bigon():
    D = derived_subdivision(bigon())
    assert validate(D) == [] and is_simplicial_complex(D)
    assert f_vector(D) == (4, 4)


def test_json_roundtrip_sorted():
    S = build_sigma(LensParams(2, [1]))
    data = S.to_dict()
    order = [(c["dim"], c["id"]) for c in data["cells"]]
    assert order == sorted(order)
    facet = next(c for c in data["cells"] if c["dim"] == 3)
    assert len(facet["key"]) == 2
    T = SimplicialPoset.from_json(S.to_json())
    assert T.dims == S.dims and T.facets == S.facets and T.vertices == S.vertices
    assert T.labels == S.labels


@settings(max_examples=60, deadline=None)
@given(complexes())
def test_invariants_random_complexes(K):
    assert validate(K) == []
    assert len(K.f_vector()) == K.dim + 1
    assert all(len(K.vertices[c]) == K.dims[c] + 1 for c in range(len(K)))
    D = derived_subdivision(K)
    assert validate(D) == []
    assert is_simplicial_complex(D)
    assert euler_characteristic(D) == euler_characteristic(K)
    assert D.f_vector()[0] == len(K)


def test_from_simplices_counts_all_faces():
    K = SimplicialPoset.from_simplices([[0, 1, 2, 3]])
    assert f_vector(K) == tuple(len(list(combinations(range(4), k))) for k in range(1, 5))
