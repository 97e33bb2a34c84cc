"""Finite simplicial posets (simplicial cell complexes).

A cell is an integer id.  Each cell records its dimension, its
codimension-1 faces and the sorted tuple of its 0-cells.  The empty cell
(dimension -1) is implicit and never stored.  Distinct cells may share a
vertex set (a bigon has two edges on the same two vertices), so the face
relation is carried by the ``facets`` lists, not by vertex sets.
"""

from __future__ import annotations

import json
from collections import defaultdict
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

FVector = tuple  # tuple[int, ...], f_0 .. f_d


class SimplicialPoset:
    """Immutable face poset of a simplicial CW-complex.

    Parameters
    ----------
    dims, facets, vertices
        Parallel sequences indexed by cell id.  ``facets[c]`` lists the
        codimension-1 faces of ``c``; ``vertices[c]`` its 0-cells.  Vertex
        tuples are sorted on construction.
    labels
        Optional display labels, ``{cell id: str}``.
    keys
        Optional structured metadata, ``{cell id: tuple}`` (for instance the
        ``(j, l)`` index of a vertex ``w_{j,l}`` or the edge tuple of a facet).
    """

    def __init__(
        self,
        dims: Sequence[int],
        facets: Sequence[Sequence[int]],
        vertices: Sequence[Sequence[int]],
        labels: Mapping[int, str] | None = None,
        keys: Mapping[int, tuple] | None = None,
    ):
        if not (len(dims) == len(facets) == len(vertices)):
            raise ValueError("dims, facets and vertices must have equal length")
        self.dims = tuple(int(d) for d in dims)
        self.facets = tuple(tuple(f) for f in facets)
        self.vertices = tuple(tuple(sorted(v)) for v in vertices)
        self.labels = dict(labels or {})
        self.keys = dict(keys or {})

    def __len__(self):
        return len(self.dims)

    def __repr__(self):
        return f"SimplicialPoset(dim={self.dim}, f={self.f_vector()})"

    @property
    def dim(self) -> int:
        return max(self.dims, default=-1)

    @cached_property
    def cells_by_dim(self) -> tuple[tuple[int, ...], ...]:
        buckets = [[] for _ in range(self.dim + 1)]
        for c, d in enumerate(self.dims):
            buckets[d].append(c)
        return tuple(tuple(b) for b in buckets)

    def cells(self, j: int) -> tuple[int, ...]:
        if 0 <= j <= self.dim:
            return self.cells_by_dim[j]
        return ()

    @property
    def vertex_ids(self) -> tuple[int, ...]:
        return self.cells(0)

    def label(self, c: int) -> str:
        return self.labels.get(c, str(c))

    @cached_property
    def cofacets(self) -> tuple[tuple[int, ...], ...]:
        """For each cell, the cells having it as a codimension-1 face."""
        up = [[] for _ in self.dims]
        for c, fs in enumerate(self.facets):
            for f in fs:
                up[f].append(c)
        return tuple(tuple(u) for u in up)

    def f_vector(self) -> FVector:
        return tuple(len(b) for b in self.cells_by_dim)

    def euler_characteristic(self) -> int:
        return sum((-1) ** j * f for j, f in enumerate(self.f_vector()))

    def lower_set(self, c: int) -> set[int]:
        """All proper nonempty faces of ``c``."""
        seen: set[int] = set()
        stack = list(self.facets[c])
        while stack:
            x = stack.pop()
            if x not in seen:
                seen.add(x)
                stack.extend(self.facets[x])
        return seen

    def leq(self, a: int, b: int) -> bool:
        return a == b or a in self.lower_set(b)

    def edges(self) -> Iterable[tuple[int, int, int]]:
        """Yield ``(edge id, u, v)`` for every 1-cell."""
        for e in self.cells(1):
            u, v = self.vertices[e]
            yield e, u, v

    # -- serialization -------------------------------------------------

    def to_dict(self) -> dict:
        cells = []
        for c in sorted(range(len(self)), key=lambda c: (self.dims[c], c)):
            entry = {
                "id": c,
                "dim": self.dims[c],
                "facets": list(self.facets[c]),
                "vertices": list(self.vertices[c]),
            }
            if c in self.labels:
                entry["label"] = self.labels[c]
            if c in self.keys:
                entry["key"] = list(self.keys[c])
            cells.append(entry)
        return {"dim": self.dim, "cells": cells}

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: Mapping) -> "SimplicialPoset":
        entries = sorted(data["cells"], key=lambda e: e["id"])
        if [e["id"] for e in entries] != list(range(len(entries))):
            raise ValueError("cell ids must be dense 0..N-1")
        return cls(
            [e["dim"] for e in entries],
            [e["facets"] for e in entries],
            [e["vertices"] for e in entries],
            labels={e["id"]: e["label"] for e in entries if "label" in e},
            keys={e["id"]: tuple(e["key"]) for e in entries if "key" in e},
        )

    @classmethod
    def from_json(cls, text: str) -> "SimplicialPoset":
        return cls.from_dict(json.loads(text))

    @classmethod
    def from_simplices(cls, maximal: Iterable[Iterable], labels: bool = True) -> "SimplicialPoset":
        """Simplicial complex generated by the given vertex sets.

        Vertex names become labels; ids are assigned by dimension, then by
        sorted vertex names.
        """
        faces: set[frozenset] = set()
        for simplex in maximal:
            s = tuple(simplex)
            for k in range(1, len(s) + 1):
                faces.update(frozenset(c) for c in combinations(s, k))
        names = sorted({v for f in faces for v in f}, key=repr)
        ordered = sorted(faces, key=lambda f: (len(f), sorted(map(names.index, f))))
        index = {f: i for i, f in enumerate(ordered)}
        vid = {v: index[frozenset([v])] for v in names}
        dims, facets, verts = [], [], []
        for f in ordered:
            dims.append(len(f) - 1)
            facets.append([index[f - {v}] for v in f] if len(f) > 1 else [])
            verts.append([vid[v] for v in f])
        lab = {vid[v]: str(v) for v in names} if labels else None
        return cls(dims, facets, verts, labels=lab)


def f_vector(P: SimplicialPoset) -> FVector:
    return P.f_vector()


def euler_characteristic(P: SimplicialPoset) -> int:
    return P.euler_characteristic()


def _omitted(P: SimplicialPoset, c: int) -> dict[int, int]:
    """Map each vertex of ``c`` to the facet of ``c`` omitting it."""
    out = {}
    verts = set(P.vertices[c])
    for f in P.facets[c]:
        missing = verts.difference(P.vertices[f])
        if len(missing) == 1:
            out[missing.pop()] = f
    return out


def validate(P: SimplicialPoset) -> list[str]:
    """Return a list of violations; empty iff ``P`` is a simplicial poset.

    Checks per cell: dimension grading of facets, ``j+1`` distinct facets
    and vertices, vertex tuple equal to the union of facet vertices, each
    facet omitting a distinct vertex, and that any two facets meet in a
    common codimension-2 face.  By induction on dimension the last
    condition makes every lower set isomorphic to a simplex boundary.
    """
    errs: list[str] = []
    n = len(P)
    for c in range(n):
        j, fs, vs = P.dims[c], P.facets[c], P.vertices[c]
        if j < 0:
            errs.append(f"cell {c}: negative dimension {j}")
            continue
        if any(not (0 <= x < n) for x in fs) or any(not (0 <= v < n) for v in vs):
            errs.append(f"cell {c}: reference to unknown cell")
            continue
        if len(set(vs)) != j + 1:
            errs.append(f"cell {c}: {len(set(vs))} vertices, expected {j + 1}")
        if any(P.dims[v] != 0 for v in vs):
            errs.append(f"cell {c}: vertex tuple contains a non-vertex")
        if j == 0:
            if fs:
                errs.append(f"cell {c}: vertex with facets {fs}")
            if vs != (c,):
                errs.append(f"cell {c}: vertex tuple must be ({c},)")
            continue
        if len(set(fs)) != j + 1 or len(fs) != j + 1:
            errs.append(f"cell {c}: {len(fs)} facets, expected {j + 1} distinct")
            continue
        if any(P.dims[f] != j - 1 for f in fs):
            errs.append(f"cell {c}: facet of wrong dimension")
            continue
        union = set()
        for f in fs:
            union.update(P.vertices[f])
        if union != set(vs):
            errs.append(f"cell {c}: vertices differ from union of facet vertices")
            continue
        omit = _omitted(P, c)
        if len(omit) != j + 1:
            errs.append(f"cell {c}: facets do not omit distinct vertices")
            continue
        if j >= 2:
            for a, b in combinations(vs, 2):
                fa = _omitted(P, omit[a]).get(b)
                fb = _omitted(P, omit[b]).get(a)
                if fa is None or fa != fb:
                    errs.append(f"cell {c}: facets omitting {a} and {b} do not share a ridge")
                    break
    return errs


def is_pure(P: SimplicialPoset) -> bool:
    d = P.dim
    return all(P.dims[c] == d or P.cofacets[c] for c in range(len(P)))


def ridges_in_two_facets(P: SimplicialPoset) -> bool:
    d = P.dim
    return d >= 1 and all(len(P.cofacets[r]) == 2 for r in P.cells(d - 1))


def is_simplicial_complex(P: SimplicialPoset) -> bool:
    """True iff distinct cells have distinct vertex sets."""
    return len(set(P.vertices)) == len(P)


def derived_subdivision(P: SimplicialPoset) -> SimplicialPoset:
    """Order complex of the nonempty cells of ``P``.

    Vertex ``c`` of the result is the barycentre of cell ``c`` of ``P``, so
    vertex ids coincide with the original cell ids.  A k-simplex is a chain
    ``a_0 < ... < a_k``; its vertex tuple is the sorted chain.
    """
    n = len(P)
    # chains with top element c, each a tuple ordered by increasing dimension
    chains_at: list[list[tuple[int, ...]]] = [[] for _ in range(n)]
    order = sorted(range(n), key=lambda c: P.dims[c])
    for c in order:
        acc = [(c,)]
        for low in P.lower_set(c):
            acc.extend(ch + (c,) for ch in chains_at[low])
        chains_at[c] = acc

    by_len = defaultdict(list)
    for c in order:
        for ch in chains_at[c]:
            by_len[len(ch)].append(ch)
    del chains_at

    index: dict[tuple[int, ...], int] = {(c,): c for c in range(n)}
    dims = [0] * n
    facets: list[tuple[int, ...]] = [()] * n
    verts: list[tuple[int, ...]] = [(c,) for c in range(n)]
    for k in range(2, max(by_len, default=1) + 1):
        for ch in by_len[k]:
            index[ch] = len(dims)
            dims.append(k - 1)
            facets.append(tuple(index[ch[:i] + ch[i + 1:]] for i in range(k)))
            verts.append(tuple(sorted(ch)))
    labels = {c: f"b({P.label(c)})" for c in range(n)}
    return SimplicialPoset(dims, facets, verts, labels=labels)
