"""Cyclic group actions on simplicial posets: the lens rotation ρ, orbits,
the good-action test and quotient posets."""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Callable, Mapping, NamedTuple, Sequence

from .builders import LensParams, VertexLabel, build_sigma
from .poset import SimplicialPoset, is_simplicial_complex


class NotAnAutomorphism(ValueError):
    pass


class NotGoodAction(ValueError):
    """The quotient of a simplicial cell complex by a group is again a
    simplicial cell complex iff no two vertices of one orbit are adjacent."""


class PosetAutomorphism:
    """A bijection of the cells of ``poset`` preserving the face relation.

    The generated cyclic group has order :attr:`order`.
    """

    def __init__(self, poset: SimplicialPoset, perm: Sequence[int], check: bool = True):
        self.poset = poset
        self.perm = tuple(perm)
        if check:
            problems = automorphism_violations(poset, self.perm)
            if problems:
                raise NotAnAutomorphism(problems[0])
        self.order = _perm_order(self.perm)

    @classmethod
    def identity(cls, poset: SimplicialPoset) -> "PosetAutomorphism":
        return cls(poset, range(len(poset)), check=False)

    @classmethod
    def from_vertex_map(cls, poset: SimplicialPoset, vmap: Mapping[int, int]) -> "PosetAutomorphism":
        """Extend a vertex permutation to all cells via vertex sets.

        Only meaningful on simplicial complexes, where a cell is determined
        by its vertex set.
        """
        if not is_simplicial_complex(poset):
            raise ValueError("vertex maps determine cells only on simplicial complexes")
        by_verts = {vs: c for c, vs in enumerate(poset.vertices)}
        perm = []
        for c, vs in enumerate(poset.vertices):
            image = tuple(sorted(vmap[v] for v in vs))
            if image not in by_verts:
                raise NotAnAutomorphism(f"cell {c} maps to non-cell {image}")
            perm.append(by_verts[image])
        return cls(poset, perm)

    def __call__(self, c: int) -> int:
        return self.perm[c]

    def __pow__(self, k: int) -> "PosetAutomorphism":
        k %= self.order
        out = list(range(len(self.perm)))
        for _ in range(k):
            out = [self.perm[x] for x in out]
        return PosetAutomorphism(self.poset, out, check=False)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.perm))


def _perm_order(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    order = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length, x = 0, start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        order = lcm(order, length)
    return order


def automorphism_violations(P: SimplicialPoset, perm: Sequence[int]) -> list[str]:
    """Check bijectivity, dimension, and that facet sets map onto facet sets.

    Covering relations determine the order, so a bijection sending the
    facet set of every cell onto the facet set of its image preserves
    ``<=`` in both directions.
    """
    n = len(P)
    if len(perm) != n or sorted(perm) != list(range(n)):
        return ["not a permutation of the cells"]
    out = []
    for c in range(n):
        g = perm[c]
        if P.dims[g] != P.dims[c]:
            out.append(f"cell {c} (dim {P.dims[c]}) maps to cell {g} (dim {P.dims[g]})")
        elif {perm[f] for f in P.facets[c]} != set(P.facets[g]):
            out.append(f"facets of cell {c} do not map onto facets of cell {g}")
    return out


def build_rho(params: LensParams, sigma: SimplicialPoset) -> PosetAutomorphism:
    """The rotation w_{j,l} -> w_{j, l + 2 q_j mod 2p} (q_0 = 1), on all cells."""
    m = 2 * params.p
    vid = {sigma.keys[v]: v for v in sigma.vertex_ids}
    vmap = {}
    for v in sigma.vertex_ids:
        j, l = sigma.keys[v]
        vmap[v] = vid[VertexLabel(j, (l + 2 * params.rotation(j)) % m)]
    rho = PosetAutomorphism.from_vertex_map(sigma, vmap)
    if rho.order != params.p:
        raise NotAnAutomorphism(f"rho has order {rho.order}, expected {params.p}")
    return rho


@dataclass(frozen=True)
class OrbitPartition:
    rep: tuple[int, ...]              # cell -> smallest cell id in its orbit
    orbits: tuple[tuple[int, ...], ...]  # sorted by representative

    @property
    def sizes(self) -> list[int]:
        return [len(o) for o in self.orbits]

    def __len__(self):
        return len(self.orbits)


def orbits(g: PosetAutomorphism, cells: Sequence[int] | None = None) -> OrbitPartition:
    """Orbits of the cyclic group generated by ``g``.

    With ``cells`` given, only orbits meeting those cells are listed, but
    ``rep`` is still defined on every cell.
    """
    n = len(g.perm)
    rep = [-1] * n
    found = []
    for start in range(n):
        if rep[start] >= 0:
            continue
        orb, x = [], start
        while rep[x] < 0:
            rep[x] = start
            orb.append(x)
            x = g.perm[x]
        found.append(tuple(sorted(orb)))
    if cells is not None:
        wanted = {rep[c] for c in cells}
        found = [o for o in found if o[0] in wanted]
    return OrbitPartition(tuple(rep), tuple(found))


class GoodAction(NamedTuple):
    good: bool
    witness: int | None  # an edge whose endpoints share an orbit

    def __bool__(self):
        return self.good


def is_good_action(g: PosetAutomorphism) -> GoodAction:
    rep = orbits(g).rep
    for e, u, v in g.poset.edges():
        if rep[u] == rep[v]:
            return GoodAction(False, e)
    return GoodAction(True, None)


def is_free(g: PosetAutomorphism) -> bool:
    """True iff no nontrivial power of ``g`` fixes a cell."""
    return all(len(o) == g.order for o in orbits(g).orbits)


def quotient(
    P: SimplicialPoset,
    g: PosetAutomorphism,
    vertex_label: Callable[[int], str] | None = None,
) -> SimplicialPoset:
    """Quotient poset P/<g>.

    Each orbit becomes a cell, indexed by its smallest member; ids are
    assigned by (dimension, representative).  Keys of representatives
    carry over.  Raises :class:`NotGoodAction` when some edge has both
    endpoints in one vertex orbit.
    """
    if g.poset is not P:
        raise ValueError("automorphism belongs to a different poset")
    good = is_good_action(g)
    if not good:
        e = good.witness
        raise NotGoodAction(
            f"action is not good: edge {e} joins vertices {P.vertices[e]} of one orbit; "
            "the quotient poset is a simplicial cell complex if and only if the action is good"
        )
    part = orbits(g)
    reps = sorted((o[0] for o in part.orbits), key=lambda r: (P.dims[r], r))
    new = {r: i for i, r in enumerate(reps)}
    to_new = lambda c: new[part.rep[c]]
    dims = [P.dims[r] for r in reps]
    facets = [[to_new(f) for f in P.facets[r]] for r in reps]
    verts = [[to_new(v) for v in P.vertices[r]] for r in reps]
    labels = {}
    for i, r in enumerate(reps):
        if P.dims[r] == 0:
            labels[i] = vertex_label(r) if vertex_label else f"[{P.label(r)}]"
    keys = {new[r]: P.keys[r] for r in reps if r in P.keys and P.dims[r] > 0}
    return SimplicialPoset(dims, facets, verts, labels=labels, keys=keys)


@dataclass(frozen=True)
class LensCrystallization:
    params: LensParams
    sigma: SimplicialPoset
    rho: PosetAutomorphism
    quotient: SimplicialPoset


def lens_crystallization(params: LensParams) -> LensCrystallization:
    """Build Σ, ρ and Σ/<ρ>, with quotient vertices named U_j / V_j."""
    sigma = build_sigma(params)
    rho = build_rho(params, sigma)
    name = lambda v: VertexLabel(*sigma.keys[v]).orbit_class()
    return LensCrystallization(params, sigma, rho, quotient(sigma, rho, vertex_label=name))
