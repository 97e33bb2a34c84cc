"""Dual edge-coloured graphs (gems) of pure simplicial posets.

Nodes are facets, one edge per ridge, coloured by the vertex of either
incident facet that the ridge misses.  For the lens crystallizations the
colours are the quotient vertices ``U0, V0, ..., Un, Vn`` (the usual
integer colours correspond as U_j <-> 2j, V_j <-> 2j+1).

Worked flip example, p = 2, n = 1, facet (0, 3) = {w_{0,0}, w_{0,1}, w_{1,3}, w_{1,0}}:
dropping w_{0,0} (colour U0) keeps w_{0,1}, whose other edge is {w_{0,1}, w_{0,2}},
so the neighbour is (1, 3); dropping w_{0,1} (colour V0) keeps w_{0,0} and
leads to (3, 3).  In coordinate 1, l_1 = 3 is odd, so V1 moves to (0, 0)
and U1 (dropping w_{1,0}) moves to (0, 2).  Orbits under the shift
(2, 2q_1) are then canonicalised to their smallest tuple.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Hashable, Iterable, Mapping, Sequence

from .builders import LensParams
from .poset import SimplicialPoset, is_pure, ridges_in_two_facets


class NotCrystallizationCandidate(ValueError):
    pass


@dataclass
class ColoredGraph:
    nodes: list[Hashable]
    edges: list[tuple[Hashable, Hashable, str]]
    colors: tuple[str, ...]

    @property
    def degree_bound(self) -> int:
        return len(self.colors)

    def incidence(self) -> dict[Hashable, list[tuple[str, Hashable]]]:
        inc: dict[Hashable, list[tuple[str, Hashable]]] = {v: [] for v in self.nodes}
        for a, b, c in self.edges:
            inc[a].append((c, b))
            inc[b].append((c, a))
        return inc

    def color_map(self) -> dict[Hashable, dict[str, Hashable]]:
        """``node -> {colour: neighbour}``; raises if the colouring is not proper."""
        out: dict[Hashable, dict[str, Hashable]] = {v: {} for v in self.nodes}
        for a, b, c in self.edges:
            for x, y in ((a, b), (b, a)):
                if c in out[x]:
                    raise ValueError(f"node {x!r} has two edges of colour {c}")
                out[x][c] = y
        return out

    def components(self, colors: Iterable[str] | None = None) -> list[set]:
        allowed = set(self.colors if colors is None else colors)
        inc = self.incidence()
        seen: set = set()
        comps = []
        for s in self.nodes:
            if s in seen:
                continue
            comp = {s}
            queue = deque([s])
            seen.add(s)
            while queue:
                x = queue.popleft()
                for c, y in inc[x]:
                    if c in allowed and y not in seen:
                        seen.add(y)
                        comp.add(y)
                        queue.append(y)
            comps.append(comp)
        return comps

    def is_bipartite(self) -> bool:
        side: dict = {}
        inc = self.incidence()
        for s in self.nodes:
            if s in side:
                continue
            side[s] = 0
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for _, y in inc[x]:
                    if y not in side:
                        side[y] = 1 - side[x]
                        queue.append(y)
                    elif side[y] == side[x]:
                        return False
        return True

    def disjoint_union(self, other: "ColoredGraph") -> "ColoredGraph":
        tag = lambda k, v: (k, v)
        return ColoredGraph(
            [tag(0, v) for v in self.nodes] + [tag(1, v) for v in other.nodes],
            [(tag(0, a), tag(0, b), c) for a, b, c in self.edges]
            + [(tag(1, a), tag(1, b), c) for a, b, c in other.edges],
            tuple(dict.fromkeys(self.colors + other.colors)),
        )


def dual_graph(K: SimplicialPoset) -> ColoredGraph:
    """Dual graph of a pure closed pseudomanifold with exactly dim+1 vertices."""
    d = K.dim
    if not is_pure(K) or not ridges_in_two_facets(K):
        raise NotCrystallizationCandidate("complex must be pure with every ridge in exactly two facets")
    if len(K.vertex_ids) != d + 1:
        raise NotCrystallizationCandidate(f"complex has {len(K.vertex_ids)} vertices, need {d + 1}")
    edges = []
    for r in K.cells(d - 1):
        a, b = K.cofacets[r]
        (ca,) = set(K.vertices[a]) - set(K.vertices[r])
        (cb,) = set(K.vertices[b]) - set(K.vertices[r])
        if ca != cb:
            raise NotCrystallizationCandidate(f"facets {a}, {b} across ridge {r} omit different vertices")
        edges.append((a, b, K.label(ca)))
    return ColoredGraph(list(K.cells(d)), edges, tuple(K.label(v) for v in K.vertex_ids))


@dataclass
class CrystallizationReport:
    regular: bool
    proper: bool
    loopless: bool
    connected: bool
    residues_connected: bool
    bipartite: bool
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.regular and self.proper and self.loopless and self.connected and self.residues_connected

    def lines(self) -> list[str]:
        names = ["regular", "proper", "loopless", "connected", "residues_connected", "bipartite"]
        return [f"{'PASS' if getattr(self, k) else 'FAIL'} {k}" for k in names]


def check_crystallization(G: ColoredGraph) -> CrystallizationReport:
    """Check the colour conditions for G to encode a crystallization.

    ``residues_connected``: for every colour c, removing the c-edges leaves a
    connected graph, i.e. the complex has one vertex per colour.
    """
    k = len(G.colors)
    failures = []
    inc = G.incidence()
    regular = all(len(inc[v]) == k for v in G.nodes)
    if not regular:
        failures.append(f"not {k}-regular")
    proper = all(len({c for c, _ in inc[v]}) == len(inc[v]) for v in G.nodes)
    if not proper:
        failures.append("edge colouring is not proper")
    loopless = all(a != b for a, b, _ in G.edges)
    if not loopless:
        failures.append("graph has loops")
    connected = len(G.components()) == 1
    if not connected:
        failures.append("graph is disconnected")
    bad = [c for c in G.colors if len(G.components(set(G.colors) - {c})) != 1]
    if bad:
        failures.append(f"residues missing colour {bad} are disconnected")
    bipartite = G.is_bipartite()
    return CrystallizationReport(regular, proper, loopless, connected, not bad, bipartite, failures)


# -- closed-form lens gems ---------------------------------------------------


def lens_colors(n: int) -> tuple[str, ...]:
    return tuple(f"{c}{j}" for j in range(n + 1) for c in "UV")


def _canonical(t: tuple[int, ...], shift: tuple[int, ...], m: int, p: int) -> tuple[int, ...]:
    return min(tuple((x + k * s) % m for x, s in zip(t, shift)) for k in range(p))


def lens_flip(node: tuple[int, ...], color: str, params: LensParams) -> tuple[int, ...]:
    """Neighbour of ``node`` across ``color`` in the lens gem."""
    m = 2 * params.p
    cls, j = color[0], int(color[1:])
    own = "U" if node[j] % 2 == 0 else "V"
    step = 1 if cls == own else -1
    t = list(node)
    t[j] = (t[j] + step) % m
    shift = tuple(2 * params.rotation(i) % m for i in range(params.n + 1))
    return _canonical(tuple(t), shift, m, params.p)


def lens_gem_direct(params: LensParams) -> ColoredGraph:
    """Gem of Σ/<ρ> read off directly from facet tuples (l_0, ..., l_n)."""
    m, p = 2 * params.p, params.p
    shift = tuple(2 * params.rotation(i) % m for i in range(params.n + 1))
    nodes = sorted({_canonical(t, shift, m, p) for t in product(range(m), repeat=params.n + 1)})
    colors = lens_colors(params.n)
    edges = []
    for a in nodes:
        for c in colors:
            b = lens_flip(a, c, params)
            if a < b:
                edges.append((a, b, c))
    return ColoredGraph(nodes, edges, colors)


# -- isomorphism -------------------------------------------------------------


def colored_isomorphic(G: ColoredGraph, H: ColoredGraph, color_bijection: Mapping[str, str] | None = None) -> bool:
    """Is there a node bijection G -> H carrying c-edges to bijection[c]-edges?

    Both graphs must be properly coloured.  Each component of G is matched
    by trying every unused seed in H and propagating along colour flips,
    which is deterministic once the seed is fixed.
    """
    if color_bijection is None:
        color_bijection = {c: c for c in G.colors}
    if len(G.nodes) != len(H.nodes) or len(G.colors) != len(H.colors) or len(G.edges) != len(H.edges):
        return False
    if sorted(color_bijection) != sorted(G.colors) or sorted(color_bijection.values()) != sorted(H.colors):
        return False
    gmap, hmap = G.color_map(), H.color_map()
    order = {v: i for i, v in enumerate(G.nodes)}
    comps = [sorted(c, key=order.__getitem__) for c in G.components()]

    def extend(seed_g, seed_h, used: set) -> dict | None:
        f = {seed_g: seed_h}
        queue = deque([seed_g])
        taken = set(used) | {seed_h}
        if seed_h in used:
            return None
        while queue:
            x = queue.popleft()
            fx = f[x]
            if len(gmap[x]) != len(hmap[fx]):
                return None
            for c, y in gmap[x].items():
                fy = hmap[fx].get(color_bijection[c])
                if fy is None:
                    return None
                if y in f:
                    if f[y] != fy:
                        return None
                elif fy in taken:
                    return None
                else:
                    f[y] = fy
                    taken.add(fy)
                    queue.append(y)
        return f

    def solve(k: int, used: set) -> bool:
        if k == len(comps):
            return True
        for h in H.nodes:
            if h in used:
                continue
            f = extend(comps[k][0], h, used)
            if f is not None and len(f) == len(comps[k]) and solve(k + 1, used | set(f.values())):
                return True
        return False

    return solve(0, set())


# -- text format ---------------------------------------------------------------


def _node_str(t: Sequence[int]) -> str:
    return "(" + ",".join(map(str, t)) + ")"


def gem_to_text(G: ColoredGraph, params: LensParams) -> str:
    """Header ``p n q_1 .. q_n`` then sorted ``<a> <b> <colour>`` lines, LF endings."""
    header = " ".join(map(str, (params.p, params.n, *params.q)))
    lines = []
    for a, b, c in G.edges:
        sa, sb = sorted((_node_str(a), _node_str(b)))
        lines.append(f"{sa} {sb} {c}")
    lines.sort()
    return "\n".join([header, *lines]) + "\n"


def gem_from_text(text: str) -> tuple[LensParams, ColoredGraph]:
    head, *body = [ln for ln in text.split("\n") if ln.strip()]
    nums = list(map(int, head.split()))
    p, n, q = nums[0], nums[1], nums[2:]
    if len(q) != n:
        raise ValueError("header q count does not match n")
    parse = lambda s: tuple(int(x) for x in s.strip("()").split(","))
    edges, nodes = [], set()
    for ln in body:
        a, b, c = ln.split()
        a, b = parse(a), parse(b)
        edges.append((a, b, c))
        nodes.update((a, b))
    return LensParams(p, q), ColoredGraph(sorted(nodes), edges, lens_colors(n))


def residues_all_connected(G: ColoredGraph, size: int) -> bool:
    """Every colour subset of the given size spans a connected subgraph."""
    return all(len(G.components(s)) == 1 for s in combinations(G.colors, size))
