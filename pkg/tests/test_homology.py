import random

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors as sympy_invariant_factors

from lenscryst.action import lens_crystallization
from lenscryst.builders import LensParams, build_sigma, valid_q_tuples
from lenscryst.homology import (
    BudgetExceeded,
    HomologyGroups,
    SparseMatrix,
    chain_complex,
    derived_top_simplices,
    homology,
    homology_via_derived,
    lens_homology,
    smith_normal_form,
    sphere_homology,
)
from lenscryst.poset import SimplicialPoset

from shapes import bigon, complexes, simplex_boundary


def oracle_factors(rows):
    """Nonzero invariant factors via sympy."""
    if not rows or not rows[0]:
        return []
    return [abs(int(x)) for x in sympy_invariant_factors(Matrix(rows), domain=ZZ) if x != 0]


def oracle_homology(K):
    """Homology from sympy invariant factors of dense boundary matrices."""
    C = chain_complex(K)
    facs = [oracle_factors(B.to_dense()) for B in C.boundaries] + [[]]
    betti = [len(C.cells[j]) - len(facs[j]) - len(facs[j + 1]) for j in range(C.dim + 1)]
    torsion = [[t for t in facs[j + 1] if t > 1] for j in range(C.dim + 1)]
    return HomologyGroups(betti, torsion)


def test_snf_small():
    res = smith_normal_form([[2, 0], [0, 3]])
    assert res.D == [[1, 0], [0, 6]]
    assert res.rank == 2 and res.torsion == [6]


def test_snf_zero():
    res = smith_normal_form([[0, 0, 0], [0, 0, 0]])
    assert res.rank == 0 and res.torsion == []


def test_snf_matches_sympy_example():
    m = [[12, 6, 4, 8], [3, 9, 6, 12], [2, 16, 14, 28], [20, 10, 10, 20]]
    assert smith_normal_form(m).diagonal == oracle_factors(m) == [1, 10, 30]


def test_snf_large_entries():
    big = 10**30
    m = [[big, 0], [0, big * 6 + 1]]
    assert smith_normal_form(m).diagonal == oracle_factors(m)


@settings(max_examples=80, deadline=None)
@given(
    st.integers(1, 6).flatmap(
        lambda r: st.integers(1, 6).flatmap(
            lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )
)
def test_snf_agrees_with_sympy(rows):
    res = smith_normal_form(rows)
    assert res.diagonal == oracle_factors(rows)
    assert all(b % a == 0 for a, b in zip(res.diagonal, res.diagonal[1:]))


def test_edge_boundary():
    K = SimplicialPoset.from_simplices([["a", "b"]])
    assert chain_complex(K).boundaries[1].to_dense() == [[-1], [1]]


def test_bigon():
    C = chain_complex(bigon())
    assert C.boundaries[1].to_dense() == [[-1, -1], [1, 1]]
    assert homology(bigon()) == HomologyGroups([1, 1], [[], []])
    assert homology_via_derived(bigon()) == homology(bigon())


def test_sparse_matmul_and_triplets():
    A = SparseMatrix.from_triplets(2, 2, [(0, 0, 1), (1, 1, 2), (0, 0, 1)])
    assert A.to_dense() == [[2, 0], [0, 2]]
    assert (A @ A).to_dense() == [[4, 0], [0, 4]]


@pytest.mark.parametrize("p,q", [(2, [1]), (3, [2]), (2, [1, 1]), (3, [1, 2])])
def test_boundary_of_boundary(p, q):
    L = lens_crystallization(LensParams(p, q))
    assert chain_complex(L.sigma).is_complex()
    assert chain_complex(L.quotient).is_complex()


def test_sigma_is_homology_sphere():
    assert homology(build_sigma(LensParams(3, [1]))) == sphere_homology(3)
    assert str(sphere_homology(3)).splitlines() == ["H_0 = Z", "H_1 = 0", "H_2 = 0", "H_3 = Z"]


def test_rp3():
    H = homology(lens_crystallization(LensParams(2, [1])).quotient)
    assert H.lines() == ["H_0 = Z", "H_1 = Z/2", "H_2 = 0", "H_3 = Z"]


def test_l312():
    H = homology(lens_crystallization(LensParams(3, [1, 2])).quotient)
    assert H == HomologyGroups([1, 0, 0, 0, 0, 1], [[], [3], [], [3], [], []])


def test_l4_torsion_appears_once():
    from lenscryst.homology import invariant_factors

    C = chain_complex(lens_crystallization(LensParams(4, [1])).quotient)
    tors = [[t for t in invariant_factors(B) if t > 1] for B in C.boundaries]
    assert sorted(t for ts in tors for t in ts) == [4]
    assert tors[2] == [4]


@pytest.mark.parametrize("p,q", [(2, [1]), (3, [1]), (4, [3])])
def test_matches_sympy_pipeline(p, q):
    Q = lens_crystallization(LensParams(p, q)).quotient
    assert homology(Q) == oracle_homology(Q) == lens_homology(p, 1)


def test_vertex_order_does_not_matter():
    Q = lens_crystallization(LensParams(3, [2])).quotient
    rng = random.Random(7)
    verts = list(Q.vertex_ids)
    for _ in range(5):
        rng.shuffle(verts)
        order = {v: i for i, v in enumerate(verts)}
        assert homology(Q, vertex_order=order) == homology(Q)
        assert chain_complex(Q, order).is_complex()


@pytest.mark.parametrize("p", [2, 3, 4, 5])
def test_via_derived_n1(p):
    Q = lens_crystallization(LensParams(p, [1])).quotient
    assert homology_via_derived(Q) == homology(Q) == lens_homology(p, 1)


def test_via_derived_sigma():
    S = build_sigma(LensParams(2, [1]))
    assert homology_via_derived(S) == homology(S) == sphere_homology(3)


def test_budget():
    Q = lens_crystallization(LensParams(2, [1, 1, 1])).quotient
    assert derived_top_simplices(Q) == 128 * 40320
    with pytest.raises(BudgetExceeded):
        homology_via_derived(Q)
    with pytest.raises(BudgetExceeded):
        homology_via_derived(bigon(), budget=3)


@pytest.mark.parametrize("p,n", [(2, 2), (3, 2), (4, 2), (5, 1), (5, 2)])
def test_homology_independent_of_q(p, n):
    results = {str(homology(lens_crystallization(LensParams(p, q)).quotient)) for q in valid_q_tuples(p, n)}
    assert results == {str(lens_homology(p, n))}


@settings(max_examples=40, deadline=None)
@given(complexes())
def test_euler_poincare_and_subdivision(K):
    H = homology(K)
    assert H.euler_characteristic() == K.euler_characteristic()
    assert homology_via_derived(K) == H
    assert chain_complex(K).is_complex()


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_simplex_boundaries(d):
    K = simplex_boundary(d)
    assert homology(K) == sphere_homology(d - 1) == oracle_homology(K)


def test_report_formats():
    H = HomologyGroups([1, 2, 0], [[], [2, 4], []])
    assert H.lines() == ["H_0 = Z", "H_1 = Z^2 + Z/2 + Z/4", "H_2 = 0"]
    assert H.to_dict()["groups"][1] == {"dim": 1, "betti": 2, "torsion": [2, 4]}
