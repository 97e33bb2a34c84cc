"""Integer homology of simplicial posets via Smith normal form.

Boundary matrices are kept sparse (one ``{row: value}`` dict per column).
Elimination first clears every pivot of absolute value 1, which for
boundary matrices removes nearly everything, then densifies the remaining
block and finishes with an exact Smith normal form on Python integers.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from math import factorial
from typing import Mapping, Sequence

from .poset import SimplicialPoset, derived_subdivision

DEFAULT_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class SparseMatrix:
    nrows: int
    ncols: int
    cols: list[dict[int, int]]

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]]) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        cols = [{i: int(rows[i][j]) for i in range(nrows) if rows[i][j]} for j in range(ncols)]
        return cls(nrows, ncols, cols)

    @classmethod
    def from_triplets(cls, nrows: int, ncols: int, triplets) -> "SparseMatrix":
        cols: list[dict[int, int]] = [{} for _ in range(ncols)]
        for i, j, v in triplets:
            if v:
                cols[j][i] = cols[j].get(i, 0) + v
        return cls(nrows, ncols, cols)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                out[i][j] = v
        return out

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = []
        for ocol in other.cols:
            acc: dict[int, int] = {}
            for k, b in ocol.items():
                for i, a in self.cols[k].items():
                    acc[i] = acc.get(i, 0) + a * b
            cols.append({i: v for i, v in acc.items() if v})
        return SparseMatrix(self.nrows, other.ncols, cols)

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)


@dataclass
class ChainComplex:
    """``boundaries[j]`` is the matrix of the boundary map C_j -> C_{j-1}
    (rows: (j-1)-cells, columns: j-cells); ``boundaries[0]`` is the zero
    map to C_{-1} = 0.  ``cells[j]`` lists the cell ids indexing C_j."""

    cells: list[tuple[int, ...]]
    boundaries: list[SparseMatrix]

    @property
    def dim(self) -> int:
        return len(self.cells) - 1

    def is_complex(self) -> bool:
        """Exact check that every composite of consecutive boundaries vanishes."""
        return all((self.boundaries[j - 1] @ self.boundaries[j]).is_zero() for j in range(2, self.dim + 1))


def chain_complex(K: SimplicialPoset, vertex_order: Mapping[int, int] | None = None) -> ChainComplex:
    """Simplicial chain complex of ``K``.

    A j-cell with vertices ordered ``v_0 < ... < v_j`` (by id, or by
    ``vertex_order`` ranks if given) has coefficient ``(-1)^i`` on the facet
    omitting ``v_i``.
    """
    rank = (lambda v: vertex_order[v]) if vertex_order is not None else (lambda v: v)
    cells = [K.cells(j) for j in range(K.dim + 1)]
    pos = {}
    for cs in cells:
        for i, c in enumerate(cs):
            pos[c] = i
    mats = [SparseMatrix(0, len(cells[0]), [{} for _ in cells[0]])] if cells else []
    for j in range(1, K.dim + 1):
        cols = []
        for c in cells[j]:
            ordered = sorted(K.vertices[c], key=rank)
            col = {}
            for f in K.facets[c]:
                fv = K.vertices[f]
                missing = [i for i, v in enumerate(ordered) if v not in fv]
                if len(missing) != 1 or len(fv) != j:
                    raise ValueError(f"cell {c}: facet {f} does not omit exactly one vertex")
                col[pos[f]] = -1 if missing[0] % 2 else 1
            if len(col) != j + 1:
                raise ValueError(f"cell {c}: facets do not match omitted vertices bijectively")
            cols.append(col)
        mats.append(SparseMatrix(len(cells[j - 1]), len(cells[j]), cols))
    return ChainComplex([tuple(c) for c in cells], mats)


# -- Smith normal form -------------------------------------------------------


@dataclass
class SNF:
    diagonal: list[int]  # nonzero invariant factors d_1 | d_2 | ..., positive
    shape: tuple[int, int]

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def torsion(self) -> list[int]:
        return [d for d in self.diagonal if d > 1]

    @property
    def D(self) -> list[list[int]]:
        m, n = self.shape
        out = [[0] * n for _ in range(m)]
        for i, d in enumerate(self.diagonal):
            out[i][i] = d
        return out


def _dense_invariant_factors(A: list[list[int]]) -> list[int]:
    """Nonzero invariant factors of a dense integer matrix (modified in place)."""
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero |entry| in the trailing block
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        if j != t:
            for row in A:
                row[t], row[j] = row[j], row[t]
        while True:
            piv = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // piv
                    if q:
                        ri, rt = A[i], A[t]
                        for j in range(t, n):
                            ri[j] -= q * rt[j]
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // piv
                    if q:
                        for row in A[t:]:
                            row[j] -= q * row[t]
                    if A[t][j]:
                        dirty = True
            if dirty:
                # move a smaller remainder into the pivot position and repeat
                cand = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cand)
                if i != t:
                    A[t], A[i] = A[i], A[t]
                else:
                    for row in A:
                        row[t], row[j] = row[j], row[t]
                continue
            # row and column cleared; enforce divisibility of the rest
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % piv),
                None,
            )
            if bad is None:
                break
            rt, rb = A[t], A[bad]
            for j in range(t, n):
                rt[j] += rb[j]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def _eliminate_units(M: SparseMatrix) -> tuple[int, list[dict[int, int]]]:
    """Clear pivots of absolute value one; return (count, remaining columns).

    Columns are visited shortest first and the pivot row is the shortest
    row among unit entries, which keeps fill-in low on boundary matrices.
    """
    cols = [dict(c) for c in M.cols]
    rows: dict[int, set[int]] = {}
    for j, col in enumerate(cols):
        for i in col:
            rows.setdefault(i, set()).add(j)
    heap = [(len(c), j) for j, c in enumerate(cols) if c]
    heapq.heapify(heap)
    stamp = [len(c) for c in cols]
    pivots = 0
    while heap:
        length, c = heapq.heappop(heap)
        col = cols[c]
        if not col or length != len(col) or stamp[c] < 0:
            continue
        r = None
        for i, v in col.items():
            if v == 1 or v == -1:
                if r is None or len(rows[i]) < len(rows[r]):
                    r = i
        if r is None:
            stamp[c] = -1  # parked until some elimination touches it
            continue
        u = col[r]
        for c2 in list(rows[r]):
            if c2 == c:
                continue
            other = cols[c2]
            factor = other[r] * u
            for i, v in col.items():
                nv = other.get(i, 0) - factor * v
                if nv:
                    if i not in other:
                        rows[i].add(c2)
                    other[i] = nv
                elif i in other:
                    del other[i]
                    rows[i].discard(c2)
            stamp[c2] = len(other)
            if other:
                heapq.heappush(heap, (len(other), c2))
        for i in col:
            rows[i].discard(c)
        del rows[r]
        cols[c] = {}
        pivots += 1
    return pivots, [c for c in cols if c]


def invariant_factors(M: SparseMatrix) -> list[int]:
    """Nonzero invariant factors of ``M`` in divisibility order."""
    units, rest = _eliminate_units(M)
    if not rest:
        return [1] * units
    row_ids = sorted({i for c in rest for i in c})
    where = {r: k for k, r in enumerate(row_ids)}
    dense = [[0] * len(rest) for _ in row_ids]
    for j, col in enumerate(rest):
        for i, v in col.items():
            dense[where[i]][j] = v
    return [1] * units + _dense_invariant_factors(dense)


def smith_normal_form(M) -> SNF:
    """Smith normal form of an integer matrix (dense rows or :class:`SparseMatrix`)."""
    if not isinstance(M, SparseMatrix):
        M = SparseMatrix.from_dense([[int(x) for x in row] for row in M])
    return SNF(invariant_factors(M), (M.nrows, M.ncols))


# -- homology ----------------------------------------------------------------


@dataclass
class HomologyGroups:
    """``betti[j]`` and ``torsion[j]`` describe H_j = Z^b + Z/t_1 + ..."""

    betti: list[int]
    torsion: list[list[int]] = field(default_factory=list)

    def __eq__(self, other):
        return isinstance(other, HomologyGroups) and self.betti == other.betti and self.torsion == other.torsion

    def group(self, j: int) -> str:
        parts = []
        b = self.betti[j]
        if b:
            parts.append("Z" if b == 1 else f"Z^{b}")
        parts.extend(f"Z/{t}" for t in self.torsion[j])
        return " + ".join(parts) if parts else "0"

    def lines(self) -> list[str]:
        return [f"H_{j} = {self.group(j)}" for j in range(len(self.betti))]

    def __str__(self):
        return "\n".join(self.lines())

    def euler_characteristic(self) -> int:
        return sum((-1) ** j * b for j, b in enumerate(self.betti))

    def to_dict(self) -> dict:
        return {"groups": [{"dim": j, "betti": b, "torsion": t} for j, (b, t) in enumerate(zip(self.betti, self.torsion))]}

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def homology_of_chain_complex(C: ChainComplex) -> HomologyGroups:
    d = C.dim
    factors = [invariant_factors(B) for B in C.boundaries]
    ranks = [len(f) for f in factors] + [0]
    betti, torsion = [], []
    for j in range(d + 1):
        betti.append(len(C.cells[j]) - ranks[j] - ranks[j + 1])
        torsion.append([t for t in factors[j + 1] if t > 1] if j < d else [])
    return HomologyGroups(betti, torsion)


def homology(K: SimplicialPoset, vertex_order: Mapping[int, int] | None = None) -> HomologyGroups:
    return homology_of_chain_complex(chain_complex(K, vertex_order))


def derived_top_simplices(K: SimplicialPoset) -> int:
    """Number of maximal chains, i.e. top simplices of the derived subdivision."""
    return sum(factorial(K.dims[c] + 1) for c in range(len(K)) if not K.cofacets[c])


def homology_via_derived(K: SimplicialPoset, budget: int = DEFAULT_BUDGET) -> HomologyGroups:
    """Homology of the derived subdivision, an honest simplicial complex.

    Raises :class:`BudgetExceeded` when the subdivision would have more than
    ``budget`` top simplices.
    """
    need = derived_top_simplices(K)
    if need > budget:
        raise BudgetExceeded(
            f"derived subdivision needs {need} top simplices, budget is {budget}; "
            "use the direct chain complex instead"
        )
    return homology(derived_subdivision(K))


def lens_homology(p: int, n: int) -> HomologyGroups:
    """Closed-form homology of a (2n+1)-dimensional lens space with group Z_p:
    Z in degrees 0 and 2n+1, Z_p in odd degrees below 2n+1, 0 otherwise."""
    d = 2 * n + 1
    betti = [1 if j in (0, d) else 0 for j in range(d + 1)]
    torsion = [[p] if j % 2 == 1 and j < d else [] for j in range(d + 1)]
    return HomologyGroups(betti, torsion)


def sphere_homology(d: int) -> HomologyGroups:
    betti = [0] * (d + 1)
    betti[0] += 1
    betti[d] += 1
    return HomologyGroups(betti, [[] for _ in range(d + 1)])
