"""Explicit complexes: the 2p-cycles, joins, and the sphere Σ = Σ_0 * ... * Σ_n."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd
from typing import Iterator, NamedTuple, Sequence

from .poset import SimplicialPoset


class InvalidParameters(ValueError):
    pass


class VertexLabel(NamedTuple):
    """Vertex ``w_{j,l}``: coordinate ``z_j = exp(l*pi*i/p)``, others zero."""

    j: int
    l: int

    def orbit_class(self) -> str:
        return ("U" if self.l % 2 == 0 else "V") + str(self.j)

    def __str__(self):
        return f"w_{{{self.j},{self.l}}}"


@dataclass(frozen=True)
class LensParams:
    """Parameters of ``L(p, q_1, ..., q_n)``; q values are reduced into [1, p-1]."""

    p: int
    q: tuple[int, ...]

    def __init__(self, p: int, q: Sequence[int]):
        p = int(p)
        q = tuple(int(x) for x in q)
        if p < 2:
            raise InvalidParameters(f"p must be >= 2, got {p}")
        if len(q) < 1:
            raise InvalidParameters("need at least one q (n >= 1)")
        bad = [x for x in q if gcd(x, p) != 1]
        if bad:
            raise InvalidParameters(f"q values {bad} are not coprime to p={p}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", tuple(x % p for x in q))

    @property
    def n(self) -> int:
        return len(self.q)

    @property
    def dim(self) -> int:
        return 2 * self.n + 1

    def rotation(self, j: int) -> int:
        """Multiplier of coordinate j (``q_0 = 1``)."""
        return 1 if j == 0 else self.q[j - 1]

    def __str__(self):
        return f"L({self.p}, {', '.join(map(str, self.q))})"


def valid_q_tuples(p: int, n: int, limit: int | None = None) -> Iterator[tuple[int, ...]]:
    """All q-tuples in [1, p-1]^n coprime to p, lexicographic."""
    units = [x for x in range(1, p) if gcd(x, p) == 1]
    for k, q in enumerate(product(units, repeat=n)):
        if limit is not None and k >= limit:
            return
        yield q


def cycle_complex(p: int, j: int = 0) -> SimplicialPoset:
    """The 2p-cycle Σ_j with vertices ``w_{j,0} .. w_{j,2p-1}`` in cyclic order."""
    if p < 2:
        raise InvalidParameters(f"p must be >= 2, got {p}")
    m = 2 * p
    dims = [0] * m + [1] * m
    facets = [()] * m + [(l, (l + 1) % m) for l in range(m)]
    verts = [(l,) for l in range(m)] + [(l, (l + 1) % m) for l in range(m)]
    labels = {l: str(VertexLabel(j, l)) for l in range(m)}
    keys = {l: VertexLabel(j, l) for l in range(m)}
    keys.update({m + l: (l,) for l in range(m)})
    return SimplicialPoset(dims, facets, verts, labels=labels, keys=keys)


def join(A: SimplicialPoset, B: SimplicialPoset) -> SimplicialPoset:
    """Join of two simplicial complexes with disjoint vertex sets.

    Cells are pairs (a, b) with a in A or empty, b in B or empty, not both
    empty.  Ids in the result are ordered by dimension, then by the pair
    with cells of A before the empty cell.  Vertex labels and keys carry over.
    """
    la = {A.labels[v] for v in A.vertex_ids if v in A.labels}
    lb = {B.labels[v] for v in B.vertex_ids if v in B.labels}
    common = la & lb
    if common:
        raise ValueError(f"join needs disjoint vertex sets; shared labels {sorted(common)}")

    E = -1  # empty cell
    da = lambda a: -1 if a == E else A.dims[a]
    db = lambda b: -1 if b == E else B.dims[b]
    pairs = [(a, b) for a in [E, *range(len(A))] for b in [E, *range(len(B))] if (a, b) != (E, E)]
    pairs.sort(key=lambda ab: (da(ab[0]) + db(ab[1]) + 1, len(A) if ab[0] == E else ab[0], ab[1]))
    index = {ab: i for i, ab in enumerate(pairs)}

    dims, facets, verts = [], [], []
    labels, keys = {}, {}
    for i, (a, b) in enumerate(pairs):
        dims.append(da(a) + db(b) + 1)
        fs = []
        if a != E:
            if A.dims[a] > 0:
                fs.extend(index[(f, b)] for f in A.facets[a])
            elif b != E:
                fs.append(index[(E, b)])
        if b != E:
            if B.dims[b] > 0:
                fs.extend(index[(a, f)] for f in B.facets[b])
            elif a != E:
                fs.append(index[(a, E)])
        facets.append(fs)
        vs = []
        if a != E:
            vs.extend(index[(v, E)] for v in A.vertices[a])
        if b != E:
            vs.extend(index[(E, v)] for v in B.vertices[b])
        verts.append(vs)
        if b == E and a in A.labels and A.dims[a] == 0:
            labels[i] = A.labels[a]
        if a == E and b in B.labels and B.dims[b] == 0:
            labels[i] = B.labels[b]
        if b == E and a in A.keys and A.dims[a] == 0:
            keys[i] = A.keys[a]
        if a == E and b in B.keys and B.dims[b] == 0:
            keys[i] = B.keys[b]
    return SimplicialPoset(dims, facets, verts, labels=labels, keys=keys)


def build_sigma(params: LensParams) -> SimplicialPoset:
    """Σ = Σ_0 * Σ_1 * ... * Σ_n, joined left to right.

    Vertex keys are :class:`VertexLabel`; each facet carries the key
    ``(l_0, ..., l_n)`` of the edges ``{w_{j,l_j}, w_{j,l_j+1}}`` it joins.
    """
    m = 2 * params.p
    S = cycle_complex(params.p, 0)
    for j in range(1, params.n + 1):
        S = join(S, cycle_complex(params.p, j))
    keys = {v: VertexLabel(*S.keys[v]) for v in S.vertex_ids}
    for f in S.cells(S.dim):
        ell = [None] * (params.n + 1)
        by_j: dict[int, list[int]] = {}
        for v in S.vertices[f]:
            by_j.setdefault(keys[v].j, []).append(keys[v].l)
        for j, (x, y) in by_j.items():
            ell[j] = x if (x + 1) % m == y else y
        keys[f] = tuple(ell)
    return SimplicialPoset(S.dims, S.facets, S.vertices, labels=S.labels, keys=keys)
