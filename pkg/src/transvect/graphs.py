"""Form graphs, t-equivalence, line-graph recognition and root-graph maps."""

from __future__ import annotations

import functools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

import numpy as np

from .errors import InvalidInput, Unsupported
from .field import FieldMatrix, FieldVector
from .kernels import min_graph_code, pair_index
from .symplectic import SymplecticSpace

CANONICAL_MAX_VERTICES = 10


@dataclass(frozen=True)
class FormGraph:
    """Simple graph on vertices 0..n-1, one neighbor bitmask per vertex."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise InvalidInput("adjacency size mismatch")
        for v, m in enumerate(self.adj):
            if (m >> v) & 1:
                raise InvalidInput("self-loop in form graph")
            if m >> self.n:
                raise InvalidInput("adjacency bits out of range")
        for u in range(self.n):
            for v in range(u + 1, self.n):
                if ((self.adj[u] >> v) & 1) != ((self.adj[v] >> u) & 1):
                    raise InvalidInput("adjacency must be symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "FormGraph":
        adj = [0] * n
        for u, v in edges:
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise InvalidInput(f"bad edge ({u},{v})")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(u for u in range(self.n) if (self.adj[v] >> u) & 1)

    def degree(self, v: int) -> int:
        return bin(self.adj[v]).count("1")

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in range(u + 1, self.n) if self.has_edge(u, v)]

    def num_edges(self) -> int:
        return sum(self.degree(v) for v in range(self.n)) // 2

    def induced(self, vertices: Iterable[int]) -> "FormGraph":
        vs = sorted(vertices)
        pos = {v: i for i, v in enumerate(vs)}
        adj = [0] * len(vs)
        for v in vs:
            for u in vs:
                if u != v and self.has_edge(u, v):
                    adj[pos[v]] |= 1 << pos[u]
        return FormGraph(len(vs), tuple(adj))

    def is_connected(self) -> bool:
        return len(connected_components(self)) <= 1

    def to_bits(self) -> np.ndarray:
        npairs = self.n * (self.n - 1) // 2
        bits = np.zeros(npairs, dtype=np.uint8)
        for u in range(self.n):
            for v in range(u + 1, self.n):
                if self.has_edge(u, v):
                    bits[pair_index(u, v, self.n)] = 1
        return bits


@dataclass(frozen=True)
class Multigraph:
    """Multigraph (parallel edges allowed, no loops); edges keep their order."""

    num_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for u, v in self.edges:
            if u == v:
                raise InvalidInput("loops are not allowed")
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise InvalidInput("edge endpoint out of range")

    @classmethod
    def make(cls, num_vertices: int, edges: Iterable[tuple[int, int]]) -> "Multigraph":
        return cls(num_vertices, tuple((min(u, v), max(u, v)) for u, v in edges))

    def is_connected(self) -> bool:
        if self.num_vertices <= 1:
            return True
        seen = {0}
        queue = deque([0])
        adj: list[list[int]] = [[] for _ in range(self.num_vertices)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        while queue:
            w = queue.popleft()
            for u in adj[w]:
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        return len(seen) == self.num_vertices


@dataclass(frozen=True)
class GraphClass:
    """Classification of a connected graph: orthogonal type or line graph."""

    tag: str  # "orthogonal" | "line_graph"
    root: Optional[Multigraph] = None

    def __post_init__(self):
        if self.tag not in ("orthogonal", "line_graph"):
            raise InvalidInput(f"unknown class tag {self.tag!r}")
        if (self.tag == "line_graph") != (self.root is not None):
            raise InvalidInput("line_graph classification must carry a root")


@functools.lru_cache(maxsize=65536)
def build_form_graph(sp: SymplecticSpace) -> FormGraph:
    """Graph on the spanning set with edges where the form is nonzero."""
    vals = sp.spanning_gram()
    m = len(sp.spanning_set)
    adj = [0] * m
    for u in range(m):
        for v in range(u + 1, m):
            if vals.entry(u, v) != 0:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return FormGraph(m, tuple(adj))


def connected_components(g: FormGraph) -> list[tuple[int, ...]]:
    """Vertex sets of connected components, each sorted, ordered by minimum."""
    seen = [False] * g.n
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        comp = []
        stack = [start]
        seen[start] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in g.neighbors(v):
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
        comps.append(tuple(sorted(comp)))
    return comps


def t_move(
    sp: SymplecticSpace, basis: list[FieldVector], i: int, j: int
) -> list[FieldVector]:
    """Replace basis[j] by basis[i]+basis[j]; needs omega(basis[i], basis[j]) = 1."""
    if sp.p != 2:
        raise InvalidInput("t-moves are defined over GF(2)")
    if i == j:
        raise InvalidInput("t-move needs distinct positions")
    if sp.omega(basis[i], basis[j]) != 1:
        raise InvalidInput("t-move needs an adjacent pair")
    out = list(basis)
    out[j] = basis[i] + basis[j]
    return out


def t_move_graph(g: FormGraph, i: int, j: int) -> FormGraph:
    """Graph rewrite induced by replacing vertex j's basis vector with i+j."""
    if not g.has_edge(i, j):
        raise InvalidInput("t-move needs an adjacent pair")
    new_j = (g.adj[i] ^ g.adj[j]) & ~(1 << j)
    adj = list(g.adj)
    for u in range(g.n):
        if u == j:
            continue
        if (new_j >> u) & 1:
            adj[u] |= 1 << j
        else:
            adj[u] &= ~(1 << j)
    adj[j] = new_j
    return FormGraph(g.n, tuple(adj))


def canonical_form(g: FormGraph) -> int:
    """Lexicographically minimal packed adjacency bit-string over relabelings."""
    if g.n > CANONICAL_MAX_VERTICES:
        raise Unsupported(f"canonical form limited to {CANONICAL_MAX_VERTICES} vertices")
    if g.n <= 1:
        return 0
    return min_graph_code(g.to_bits(), g.n)


def graph_from_code(n: int, code: int) -> FormGraph:
    npairs = n * (n - 1) // 2
    edges = []
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            if (code >> (npairs - 1 - k)) & 1:
                edges.append((i, j))
            k += 1
    return FormGraph.from_edges(n, edges)


@dataclass(frozen=True)
class TClosure:
    """t-equivalence closure as canonical codes; complete=False when the
    state budget ran out and the set is only a lower bound."""

    classes: frozenset[int]
    complete: bool


def t_equivalence_closure(g: FormGraph, max_states: int = 100_000) -> TClosure:
    """All isomorphism classes of graphs t-equivalent to g.

    BFS over the graph rewrite induced by t-moves, deduplicated by canonical
    form. The rewrite depends only on the labeled graph, so searching on
    isomorphism classes is exhaustive.
    """
    if not g.is_connected():
        raise InvalidInput("t-equivalence closure needs a connected graph")
    start = canonical_form(g)
    seen = {start}
    queue = deque([start])
    complete = True
    while queue:
        code = queue.popleft()
        h = graph_from_code(g.n, code)
        for u, v in h.edges():
            for i, j in ((u, v), (v, u)):
                nxt = canonical_form(t_move_graph(h, i, j))
                if nxt not in seen:
                    if len(seen) >= max_states:
                        complete = False
                        continue
                    seen.add(nxt)
                    queue.append(nxt)
    return TClosure(frozenset(seen), complete)


@functools.lru_cache(maxsize=65536)
def line_graph(m: Multigraph) -> FormGraph:
    """Vertices are edges of m; adjacent iff they share exactly one endpoint."""
    k = len(m.edges)
    adj = [0] * k
    for a in range(k):
        ua, va = m.edges[a]
        for b in range(a + 1, k):
            ub, vb = m.edges[b]
            shared = len({ua, va} & {ub, vb})
            if shared == 1:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    return FormGraph(k, tuple(adj))


def _bfs_order(g: FormGraph) -> list[int]:
    order = []
    seen = [False] * g.n
    queue = deque([0])
    seen[0] = True
    while queue:
        v = queue.popleft()
        order.append(v)
        for u in g.neighbors(v):
            if not seen[u]:
                seen[u] = True
                queue.append(u)
    return order


def _root_assignments(g: FormGraph) -> Iterator[list[tuple[int, int]]]:
    """Backtracking search for edge assignments whose line graph equals g.

    Yields, per solution, the root edge (a,b) for every graph vertex, indexed
    by vertex. Root vertex labels are consecutive ints from 0.
    """
    if g.n == 0:
        return
    order = _bfs_order(g)
    assign: dict[int, tuple[int, int]] = {}

    def consistent(v: int, e: tuple[int, int]) -> bool:
        ev = set(e)
        for u, eu in assign.items():
            shared = len(ev & set(eu))
            if g.has_edge(u, v):
                if shared != 1:
                    return False
            elif shared == 1:
                return False
        return True

    def extend(k: int, nlabels: int) -> Iterator[list[tuple[int, int]]]:
        if k == len(order):
            yield [assign[v] for v in range(g.n)]
            return
        v = order[k]
        if k == 0:
            assign[v] = (0, 1)
            yield from extend(1, 2)
            del assign[v]
            return
        anchor = next(u for u in order[:k] if g.has_edge(u, v))
        seen_cands = set()
        for x in assign[anchor]:
            for y in list(range(nlabels)) + [nlabels]:
                if y == x:
                    continue
                cand = (min(x, y), max(x, y))
                if cand in seen_cands:
                    continue
                seen_cands.add(cand)
                if not consistent(v, cand):
                    continue
                assign[v] = cand
                yield from extend(k + 1, nlabels + (1 if y == nlabels else 0))
                del assign[v]

    yield from extend(0, 0)


def _assignment_to_multigraph(assignment: list[tuple[int, int]]) -> Multigraph:
    labels = sorted({x for e in assignment for x in e})
    relabel = {x: i for i, x in enumerate(labels)}
    edges = tuple((relabel[a], relabel[b]) for a, b in assignment)
    return Multigraph.make(len(labels), edges)


def recognize_root_multigraph(g: FormGraph) -> Optional[Multigraph]:
    """A connected multigraph whose line graph is g (edge k <-> vertex k),
    or None when no such root exists."""
    if not g.is_connected():
        raise InvalidInput("root recognition needs a connected graph")
    for assignment in _root_assignments(g):
        return _assignment_to_multigraph(assignment)
    return None


def enumerate_root_multigraphs(g: FormGraph, limit: int = 16) -> list[Multigraph]:
    """Up to `limit` distinct roots of g, in deterministic search order."""
    if not g.is_connected():
        raise InvalidInput("root recognition needs a connected graph")
    roots = []
    seen = set()
    for assignment in _root_assignments(g):
        m = _assignment_to_multigraph(assignment)
        key = (m.num_vertices, m.edges)
        if key not in seen:
            seen.add(key)
            roots.append(m)
            if len(roots) >= limit:
                break
    return roots


@functools.lru_cache(maxsize=65536)
def _classify_cached(n: int, adj: tuple[int, ...]) -> GraphClass:
    root = recognize_root_multigraph(FormGraph(n, adj))
    if root is None:
        return GraphClass("orthogonal")
    return GraphClass("line_graph", root)


def classify_graph(g: FormGraph) -> GraphClass:
    """Connected graphs only: line graph of a multigraph, or orthogonal type."""
    return _classify_cached(g.n, g.adj)


@dataclass(frozen=True)
class RootMaps:
    boundary: FieldMatrix  # |V| x |E| over GF(2)
    coboundary: FieldMatrix  # |E| x |V|, the transpose
    spanning_tree_edges: frozenset[int]


@functools.lru_cache(maxsize=65536)
def root_graph_maps(m: Multigraph) -> RootMaps:
    """Boundary/coboundary matrices of a connected root multigraph plus one
    BFS spanning tree (edge indices)."""
    if not m.is_connected():
        raise InvalidInput("root graph maps need a connected multigraph")
    nv = m.num_vertices
    ne = len(m.edges)
    rows = [[0] * ne for _ in range(nv)]
    for e, (u, v) in enumerate(m.edges):
        rows[u][e] = 1
        rows[v][e] = 1
    boundary = FieldMatrix.make(2, rows)
    coboundary = boundary.transpose()
    incident: list[list[tuple[int, int]]] = [[] for _ in range(nv)]
    for e, (u, v) in enumerate(m.edges):
        incident[u].append((v, e))
        incident[v].append((u, e))
    tree = set()
    seen = [False] * nv
    seen[0] = True
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for u, e in incident[v]:
            if not seen[u]:
                seen[u] = True
                tree.add(e)
                queue.append(u)
    return RootMaps(boundary, coboundary, frozenset(tree))


def d_value(y: FieldVector) -> int:
    """min(#zero coords, #one coords)."""
    w = y.weight()
    return min(w, len(y) - w)


# ---------------------------------------------------------------------------
# Exhaustive isomorphism-class enumeration at desk scale.
# ---------------------------------------------------------------------------

_all_classes_cache: dict[int, tuple[int, ...]] = {}


def all_graph_classes(n: int) -> tuple[int, ...]:
    """Canonical codes of every isomorphism class of simple graphs on n vertices."""
    if n < 1:
        raise InvalidInput("need n >= 1")
    if n in _all_classes_cache:
        return _all_classes_cache[n]
    if n == 1:
        codes: tuple[int, ...] = (0,)
    else:
        prev = all_graph_classes(n - 1)
        found = set()
        for code in prev:
            g = graph_from_code(n - 1, code)
            base = list(g.adj) + [0]
            for mask in range(1 << (n - 1)):
                adj = list(base)
                adj[n - 1] = mask
                for u in range(n - 1):
                    if (mask >> u) & 1:
                        adj[u] |= 1 << (n - 1)
                found.add(canonical_form(FormGraph(n, tuple(adj))))
        codes = tuple(sorted(found))
    _all_classes_cache[n] = codes
    return codes


def connected_graph_classes(n: int) -> tuple[int, ...]:
    return tuple(c for c in all_graph_classes(n) if graph_from_code(n, c).is_connected())


def e6_graph() -> FormGraph:
    """The E6 tree: a 5-path with an extra vertex attached to its middle."""
    return FormGraph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)])


def is_tree(g: FormGraph) -> bool:
    return g.is_connected() and g.num_edges() == g.n - 1


def contains_induced_e6(g: FormGraph) -> bool:
    if g.n < 6:
        return False
    target = canonical_form(e6_graph())
    import itertools as _it

    for sub in _it.combinations(range(g.n), 6):
        if canonical_form(g.induced(sub)) == target:
            return True
    return False


def orthogonal_type_by_closure(g: FormGraph, max_states: int = 100_000) -> tuple[bool, bool]:
    """(is orthogonal type, search complete) via the defining t-closure search:
    some t-equivalent graph is a tree containing induced E6."""
    closure = t_equivalence_closure(g, max_states)
    for code in closure.classes:
        h = graph_from_code(g.n, code)
        if is_tree(h) and contains_induced_e6(h):
            return True, closure.complete
    return False, closure.complete
