"""Closed-form orbit deciders for dual and ordinary transvection actions,
plus the spanning-set lift, the component reduction and witness search."""

from __future__ import annotations

import functools
from collections import deque
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import BudgetExceeded, InvalidInput, Unsupported
from .field import FieldMatrix, FieldVector, image_contains, solve_affine
from .graphs import (
    Multigraph,
    build_form_graph,
    classify_graph,
    connected_components,
    d_value,
    line_graph,
    root_graph_maps,
)
from .kernels import xor_expand
from .symplectic import (
    Functional,
    QuadraticForm,
    SymplecticSpace,
    dual_transvection_apply,
    omega_map,
    quadratic_eval,
)

CERT_ZERO = "ZeroVsNonzero"
CERT_IM_OMEGA = "ImOmegaGap"
CERT_Q_CONDITION = "QConditionFail"
CERT_D = "DMismatch"
CERT_COMPONENT = "ComponentMismatch"
CERT_KERNEL = "KernelFixed"
CERT_SPAN = "SpanGap"
CERT_Q_VALUE = "QMismatch"

MIN_SUMMAND_MAX_DIM = 14

Move = tuple[int, int]  # (spanning-set index, scalar k)


@dataclass(frozen=True)
class Decision:
    same: bool
    certificate: Optional[str] = None
    witness: Optional[tuple[Move, ...]] = None
    detail: Optional[str] = None

    def __post_init__(self):
        if not self.same and self.certificate is None:
            raise InvalidInput("a DifferentOrbit decision needs a certificate")

    @property
    def verdict(self) -> str:
        return "same" if self.same else "different"


def same_orbit(witness: Optional[tuple[Move, ...]] = None) -> Decision:
    return Decision(True, witness=witness)


def different_orbit(certificate: str, detail: Optional[str] = None) -> Decision:
    return Decision(False, certificate=certificate, detail=detail)


@dataclass(frozen=True)
class DualProblem:
    space: SymplecticSpace
    alpha: Functional
    beta: Functional

    def __post_init__(self):
        if len(self.alpha) != self.space.dim or len(self.beta) != self.space.dim:
            raise InvalidInput("functional length must match the space dimension")
        if self.alpha.p != self.space.p or self.beta.p != self.space.p:
            raise InvalidInput("functional modulus must match the space")


@dataclass(frozen=True)
class Lift:
    """Free space on the spanning set, with the functional transport map."""

    original: SymplecticSpace
    space: SymplecticSpace
    identity: bool

    def transport(self, alpha: Functional) -> Functional:
        if self.identity:
            return alpha
        return Functional.make(
            self.space.p, [alpha(s) for s in self.original.spanning_set]
        )

    def vector_to_lift(self, x: FieldVector) -> FieldVector:
        """Coordinates of x in the spanning set; needs the set to be a basis."""
        if self.identity:
            return x
        if not self.original.spanning_is_basis():
            raise InvalidInput("vector lift needs a basis spanning set")
        m = FieldMatrix.from_columns(self.original.p, self.original.spanning_set)
        sol = solve_affine(m, x, use_packed=False)
        return sol.particular


def lift_spanning(space: SymplecticSpace) -> Lift:
    """Free space on the spanning set with the form pulled back symbol-wise."""
    if space.has_standard_basis:
        return Lift(space, space, True)
    gram = space.spanning_gram()
    lifted = SymplecticSpace.create(space.p, gram.rows)
    return Lift(space, lifted, False)


@functools.lru_cache(maxsize=65536)
def _component_space(space: SymplecticSpace, comp: tuple[int, ...]) -> SymplecticSpace:
    sub = space.gram.submatrix(comp, comp)
    return SymplecticSpace.create(space.p, sub.rows)


@functools.lru_cache(maxsize=65536)
def _quadratic_form_for(gram: FieldMatrix) -> QuadraticForm:
    return QuadraticForm.from_gram(gram)


def decide_general_field(
    space: SymplecticSpace, alpha: Functional, beta: Functional
) -> Decision:
    """Same orbit iff beta - alpha lies in the image of the curried form.

    Needs p != 2, connected G(S), nonzero functionals.
    """
    if space.p == 2:
        raise InvalidInput("decide_general_field needs p != 2")
    if alpha.is_zero or beta.is_zero:
        raise InvalidInput("zero functionals are handled by the caller")
    gap = (beta - alpha).coords
    if image_contains(space.omega_matrix, gap):
        return same_orbit()
    return different_orbit(CERT_IM_OMEGA)


def decide_orthogonal(
    space: SymplecticSpace,
    alpha: Functional,
    beta: Functional,
    q: Optional[QuadraticForm] = None,
) -> Decision:
    """Orthogonal-type basis over GF(2): same orbit iff some x solves
    omega(x) = alpha+beta with (Q_S+alpha)(x) = 0.

    Restricted to the kernel of the form, Q_S+alpha is linear, so the
    solution coset carries both values iff some kernel basis vector has
    (Q_S+alpha) = 1; otherwise the value is constant on the coset.
    """
    if space.p != 2:
        raise InvalidInput("decide_orthogonal needs p = 2")
    if alpha.is_zero or beta.is_zero:
        raise InvalidInput("zero functionals are handled by the caller")
    if q is None:
        q = _quadratic_form_for(space.gram)
    target = (alpha + beta).coords
    sol = solve_affine(space.omega_matrix, target)
    if sol.particular is None:
        return different_orbit(CERT_IM_OMEGA)

    def q_plus_alpha(v: FieldVector) -> int:
        return (quadratic_eval(q, v) + alpha(v)) % 2

    if any(q_plus_alpha(kv) == 1 for kv in sol.kernel_basis):
        return same_orbit()
    if q_plus_alpha(sol.particular) == 0:
        return same_orbit()
    return different_orbit(CERT_Q_CONDITION)


def decide_linegraph(
    space: SymplecticSpace, beta: Functional, gamma: Functional, root: Multigraph
) -> Decision:
    """Line-graph basis over GF(2): image test, then the d-invariant of any
    coboundary preimages."""
    if space.p != 2:
        raise InvalidInput("decide_linegraph needs p = 2")
    g = build_form_graph(space)
    if line_graph(root).adj != g.adj:
        raise InvalidInput("root multigraph does not match the form graph")
    gap = (gamma - beta).coords
    if not image_contains(space.omega_matrix, gap):
        return different_orbit(CERT_IM_OMEGA)
    maps = root_graph_maps(root)
    sol_beta = solve_affine(maps.coboundary, beta.coords)
    if sol_beta.particular is None:
        return same_orbit()
    sol_gamma = solve_affine(maps.coboundary, gamma.coords)
    if sol_gamma.particular is None:
        raise InvalidInput("image test passed but coboundary preimage missing")
    if d_value(sol_beta.particular) == d_value(sol_gamma.particular):
        return same_orbit()
    return different_orbit(CERT_D)


def _decide_component(space: SymplecticSpace, alpha: Functional, beta: Functional) -> Decision:
    """Connected standard-basis component with alpha != beta."""
    if alpha.is_zero != beta.is_zero:
        return different_orbit(CERT_ZERO)
    if space.p != 2:
        return decide_general_field(space, alpha, beta)
    cls = classify_graph(build_form_graph(space))
    if cls.tag == "line_graph":
        return decide_linegraph(space, alpha, beta, cls.root)
    return decide_orthogonal(space, alpha, beta)


def decide_dual(prob: DualProblem) -> Decision:
    """Top-level dual-orbit decider.

    Pipeline: zero handling, lift to the free space on the spanning set,
    split into connected components, then the per-component criterion for
    the field and graph class.
    """
    alpha, beta, space = prob.alpha, prob.beta, prob.space
    if alpha == beta:
        return same_orbit(())
    if alpha.is_zero != beta.is_zero:
        return different_orbit(CERT_ZERO)
    lift = lift_spanning(space)
    a = lift.transport(alpha)
    b = lift.transport(beta)
    graph = build_form_graph(lift.space)
    comps = connected_components(graph)
    multi = len(comps) > 1
    for idx, comp in enumerate(comps):
        ac = a.restrict(comp)
        bc = b.restrict(comp)
        if ac == bc:
            continue
        inner = _decide_component(_component_space(lift.space, comp), ac, bc)
        if not inner.same:
            if multi:
                detail = f"component {idx}: {inner.certificate}"
                return different_orbit(CERT_COMPONENT, detail=detail)
            return inner
    return same_orbit()


def decide_nondual(space: SymplecticSpace, x: FieldVector, y: FieldVector) -> Decision:
    """Orbit decision for the ordinary (non-dual) action on vectors."""
    if len(x) != space.dim or len(y) != space.dim:
        raise InvalidInput("vector length must match the space dimension")
    if x == y:
        return same_orbit(())
    x_fixed = omega_map(space, x).is_zero
    y_fixed = omega_map(space, y).is_zero
    if x_fixed or y_fixed:
        return different_orbit(CERT_KERNEL)
    if space.p != 2:
        return _decide_nondual_general(space, x, y)
    if not space.spanning_is_basis():
        raise Unsupported("no closed form for GF(2) with a non-basis spanning set")
    lift = lift_spanning(space)
    graph = build_form_graph(lift.space)
    if not graph.is_connected():
        raise Unsupported("no closed form for GF(2) with a disconnected graph")
    xs = lift.vector_to_lift(x)
    ys = lift.vector_to_lift(y)
    cls = classify_graph(graph)
    if cls.tag == "orthogonal":
        q = QuadraticForm.from_gram(lift.space.gram)
        if quadratic_eval(q, xs) == quadratic_eval(q, ys):
            return same_orbit()
        return different_orbit(CERT_Q_VALUE)
    if min_summand_count(space, x) == min_summand_count(space, y):
        return same_orbit()
    return different_orbit(CERT_D)


def _decide_nondual_general(space: SymplecticSpace, x: FieldVector, y: FieldVector) -> Decision:
    """p != 2, any spanning set: same orbit iff y-x lies in the span of the
    components that pair nontrivially with both x and y."""
    graph = build_form_graph(space)
    comps = connected_components(graph)
    active_vectors: list[FieldVector] = []
    for comp in comps:
        sees_x = any(space.omega(x, space.spanning_set[i]) != 0 for i in comp)
        sees_y = any(space.omega(y, space.spanning_set[i]) != 0 for i in comp)
        if sees_x and sees_y:
            active_vectors.extend(space.spanning_set[i] for i in comp)
    gap = y - x
    if not active_vectors:
        return different_orbit(CERT_SPAN)
    m = FieldMatrix.from_columns(space.p, active_vectors)
    if image_contains(m, gap):
        return same_orbit()
    return different_orbit(CERT_SPAN)


def _orbit_of_first_basis_vector(gram: FieldMatrix) -> list[int]:
    """BFS orbit (bit-coded) of e_0 under GF(2) transvections in basis coords."""
    n = gram.nrows
    row_masks = [sum(gram.entry(i, j) << j for j in range(n)) for i in range(n)]
    start = 1
    seen = {start}
    queue = deque([start])
    while queue:
        code = queue.popleft()
        for i in range(n):
            if bin(code & row_masks[i]).count("1") & 1:
                nxt = code ^ (1 << i)
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return sorted(seen)


def min_summand_count(space: SymplecticSpace, x: FieldVector, max_dim: int = MIN_SUMMAND_MAX_DIM) -> int:
    """Least s with x a sum of s elements of the orbit of the basis.

    BFS computes the orbit of one basis vector, then layered XOR sums find
    the first layer containing x. Exponential in the dimension; desk scale.
    """
    if space.p != 2:
        raise InvalidInput("the d-function is defined over GF(2)")
    if not space.spanning_is_basis():
        raise InvalidInput("the d-function needs a basis spanning set")
    if space.dim > max_dim:
        raise BudgetExceeded(f"dimension {space.dim} above d-function budget {max_dim}")
    lift = lift_spanning(space)
    gram = lift.space.gram
    graph = build_form_graph(lift.space)
    if not graph.is_connected():
        raise InvalidInput("the d-function needs a connected graph")
    orbit = _orbit_of_first_basis_vector(gram)
    orbit_set = set(orbit)
    n = space.dim
    for i in range(n):
        if (1 << i) not in orbit_set:
            raise InvalidInput("basis is not contained in one orbit")
    target = lift.vector_to_lift(x).to_bits()
    if target in orbit_set:
        return 1
    orbit_arr = np.asarray(orbit, dtype=np.int64)
    layer = np.zeros(1 << n, dtype=bool)
    layer[orbit_arr] = True
    count = 1
    while True:
        layer = xor_expand(layer, orbit_arr)
        count += 1
        if layer[target]:
            return count
        if count > n + 2:
            raise InvalidInput("d-function failed to terminate; inconsistent input")


def find_witness(prob: DualProblem, budget: int = 200_000) -> Optional[tuple[Move, ...]]:
    """Bidirectional BFS for a dual-generator sequence mapping alpha to beta.

    Returns moves (spanning index, k) with
    alpha o g_1 o ... o g_m = beta, or None when the budget runs out.
    """
    space, alpha, beta = prob.space, prob.alpha, prob.beta
    if alpha == beta:
        return ()
    p = space.p
    gens: list[Move] = [
        (si, k) for si in range(len(space.spanning_set)) for k in range(1, p)
    ]

    def apply_move(f: Functional, move: Move) -> Functional:
        si, k = move
        return dual_transvection_apply(space, space.spanning_set[si], k, f)

    fwd: dict[Functional, tuple[Move, ...]] = {alpha: ()}
    bwd: dict[Functional, tuple[Move, ...]] = {beta: ()}
    fwd_frontier = [alpha]
    bwd_frontier = [beta]
    visited = 2
    while fwd_frontier and bwd_frontier:
        if visited > budget:
            return None
        expand_fwd = len(fwd_frontier) <= len(bwd_frontier)
        frontier, table, other = (
            (fwd_frontier, fwd, bwd) if expand_fwd else (bwd_frontier, bwd, fwd)
        )
        new_frontier = []
        for state in frontier:
            path = table[state]
            for move in gens:
                nxt = apply_move(state, move)
                if nxt in table:
                    continue
                table[nxt] = path + (move,)
                new_frontier.append(nxt)
                visited += 1
                if nxt in other:
                    meet = nxt
                    fpath = fwd[meet]
                    bpath = bwd[meet]
                    inv = tuple((si, (-k) % p) for si, k in reversed(bpath))
                    return fpath + inv
        if expand_fwd:
            fwd_frontier = new_frontier
        else:
            bwd_frontier = new_frontier
    return None


def replay_witness(prob: DualProblem, witness: tuple[Move, ...]) -> Functional:
    """Apply a witness move sequence to the problem's alpha."""
    f = prob.alpha
    for move in witness:
        f = dual_transvection_apply(prob.space, prob.space.spanning_set[move[0]], move[1], f)
    return f
