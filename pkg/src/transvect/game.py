"""Lit-only sigma game engine on a form graph.

A state is a lamp configuration (functional over GF(2)); playing a lit
vertex toggles all its neighbors and equals the dual transvection there.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .errors import BudgetExceeded, IllegalMove, InvalidInput
from .graphs import FormGraph
from .oracle import state_budget
from .orbits import Decision, DualProblem, decide_dual, find_witness
from .symplectic import Functional, SymplecticSpace


def space_from_graph(g: FormGraph) -> SymplecticSpace:
    """GF(2) space on the graph's vertices with the adjacency form."""
    rows = [[1 if g.has_edge(i, j) else 0 for j in range(g.n)] for i in range(g.n)]
    return SymplecticSpace.create(2, rows)


@dataclass(frozen=True)
class GameState:
    graph: FormGraph
    initial: tuple[int, ...]
    history: tuple[int, ...]
    lamps: tuple[int, ...]

    @classmethod
    def new(cls, graph: FormGraph, lamps: tuple[int, ...]) -> "GameState":
        lamps = tuple(int(b) & 1 for b in lamps)
        if len(lamps) != graph.n:
            raise InvalidInput("lamp vector length must match the vertex count")
        return cls(graph, lamps, (), lamps)

    @property
    def functional(self) -> Functional:
        return Functional.make(2, self.lamps)

    def lamp_code(self) -> int:
        return sum(b << i for i, b in enumerate(self.lamps))


def legal_moves(st: GameState) -> frozenset[int]:
    """Exactly the lit vertices."""
    return frozenset(v for v, b in enumerate(st.lamps) if b)


def _toggle(graph: FormGraph, lamps: tuple[int, ...], v: int) -> tuple[int, ...]:
    mask = graph.adj[v]
    return tuple(b ^ ((mask >> u) & 1) for u, b in enumerate(lamps))


def play(st: GameState, v: int) -> GameState:
    """Play a lit vertex: toggle its neighbors, leave v itself unchanged."""
    if not (0 <= v < st.graph.n):
        raise InvalidInput(f"vertex {v} out of range")
    if not st.lamps[v]:
        raise IllegalMove(f"vertex {v} is not lit")
    return GameState(st.graph, st.initial, st.history + (v,), _toggle(st.graph, st.lamps, v))


def undo(st: GameState) -> GameState:
    """Drop the last move by replaying the shortened history."""
    if not st.history:
        raise IllegalMove("nothing to undo")
    out = GameState.new(st.graph, st.initial)
    for v in st.history[:-1]:
        out = play(out, v)
    return out


def replay(graph: FormGraph, initial: tuple[int, ...], history: tuple[int, ...]) -> GameState:
    st = GameState.new(graph, initial)
    for v in history:
        st = play(st, v)
    return st


def reachable(
    st: GameState, target: Functional, want_witness: bool = False, budget: int = 200_000
) -> Decision:
    """Whether the target lamp configuration is reachable from the current one."""
    if len(target) != st.graph.n:
        raise InvalidInput("target length must match the vertex count")
    prob = DualProblem(space_from_graph(st.graph), st.functional, target)
    decision = decide_dual(prob)
    if decision.same and want_witness:
        witness = find_witness(prob, budget=budget)
        if witness is not None:
            decision = Decision(True, witness=witness)
    return decision


@dataclass(frozen=True)
class MinLitResult:
    count: int
    lamps: tuple[int, ...]
    moves: tuple[int, ...]


def min_lit(st: GameState, budget: Optional[int] = None) -> MinLitResult:
    """Minimum lit count over the orbit of the current lamps, with a witness
    configuration and the move sequence reaching it."""
    if budget is None:
        budget = state_budget()
    n = st.graph.n
    if (1 << n) > budget:
        raise BudgetExceeded(f"{1 << n} states exceed budget {budget}")
    start = st.lamp_code()
    parents: dict[int, tuple[int, int]] = {start: (-1, -1)}
    queue = deque([start])
    best_code, best_weight = start, bin(start).count("1")
    while queue:
        code = queue.popleft()
        for v in range(n):
            if not (code >> v) & 1:
                continue
            nxt = code ^ (st.graph.adj[v] & ~(1 << v))
            if nxt in parents:
                continue
            parents[nxt] = (code, v)
            queue.append(nxt)
            w = bin(nxt).count("1")
            if w < best_weight or (w == best_weight and nxt < best_code):
                best_weight, best_code = w, nxt
    moves = []
    code = best_code
    while code != start:
        code, v = parents[code]
        moves.append(v)
    moves.reverse()
    lamps = tuple((best_code >> i) & 1 for i in range(n))
    return MinLitResult(best_weight, lamps, tuple(moves))
