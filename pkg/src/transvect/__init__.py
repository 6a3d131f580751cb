"""Orbit reachability for (dual) symplectic transvection groups over GF(p),
with the lit-only sigma game as the GF(2) face of the dual action."""

__version__ = "0.1.0"

from .errors import BudgetExceeded, IllegalMove, InvalidInput, Unsupported
from .field import FieldMatrix, FieldVector, SolutionSet, image_contains, solve_affine
from .game import GameState, MinLitResult, legal_moves, min_lit, play, reachable, space_from_graph, undo
from .graphs import (
    FormGraph,
    GraphClass,
    Multigraph,
    RootMaps,
    TClosure,
    build_form_graph,
    canonical_form,
    classify_graph,
    connected_components,
    d_value,
    e6_graph,
    line_graph,
    recognize_root_multigraph,
    root_graph_maps,
    t_equivalence_closure,
    t_move,
)
from .oracle import OrbitPartition, enumerate_affine_orbits, enumerate_dual_orbits, enumerate_vector_orbits
from .orbits import (
    Decision,
    DualProblem,
    min_summand_count,
    decide_dual,
    decide_general_field,
    decide_linegraph,
    decide_nondual,
    decide_orthogonal,
    find_witness,
    lift_spanning,
    replay_witness,
)
from .symplectic import (
    Functional,
    QuadraticForm,
    SymplecticSpace,
    affine_transvection_apply,
    dual_transvection_apply,
    omega_map,
    quadratic_eval,
    transvection_apply,
    transvection_matrix,
)

__all__ = [name for name in dir() if not name.startswith("_")]
