"""Brute-force orbit enumeration: the ground truth the closed-form deciders
are validated against."""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Optional

import numpy as np

from .errors import BudgetExceeded
from .field import FieldVector
from .kernels import orbit_labels_gf2
from .symplectic import Functional, SymplecticSpace

DEFAULT_BUDGET = 1 << 22


def state_budget() -> int:
    raw = os.environ.get("TRANSVECT_BUDGET")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_BUDGET


@dataclass(frozen=True)
class OrbitPartition:
    """Partition of all p^dim integer-coded states, closed under the action."""

    p: int
    dim: int
    blocks: tuple[frozenset[int], ...]

    @cached_property
    def _block_index(self) -> dict[int, int]:
        idx = {}
        for b, block in enumerate(self.blocks):
            for code in block:
                idx[code] = b
        return idx

    def block_of(self, code: int) -> int:
        return self._block_index[code]

    def same_block(self, a: int, b: int) -> bool:
        return self.block_of(a) == self.block_of(b)

    @property
    def n_states(self) -> int:
        return sum(len(b) for b in self.blocks)


def _check_budget(space: SymplecticSpace, budget: Optional[int]) -> int:
    limit = budget if budget is not None else state_budget()
    n_states = space.p ** space.dim
    if n_states > limit:
        raise BudgetExceeded(f"{n_states} states exceed budget {limit}")
    return n_states


def _blocks_from_labels(labels: np.ndarray) -> tuple[frozenset[int], ...]:
    groups: dict[int, list[int]] = {}
    for code, lab in enumerate(labels.tolist()):
        groups.setdefault(lab, []).append(code)
    return tuple(frozenset(groups[k]) for k in sorted(groups))


def _gf2_masks(space: SymplecticSpace, kind: str, alpha: Optional[Functional]):
    cond, flip, inv = [], [], []
    for s in space.spanning_set:
        smask = s.to_bits()
        umask = space.gram.mat_vec(s).to_bits()  # (G s) . x = omega(x, s)
        if kind == "dual":
            cond.append(smask)
            flip.append(umask)
            inv.append(0)
        elif kind == "vector":
            cond.append(umask)
            flip.append(smask)
            inv.append(0)
        else:
            cond.append(umask)
            flip.append(smask)
            inv.append(alpha(s) if alpha is not None else 0)
    return cond, flip, inv


def _enumerate_gf2(space: SymplecticSpace, kind: str, alpha, budget) -> OrbitPartition:
    n_states = _check_budget(space, budget)
    cond, flip, inv = _gf2_masks(space, kind, alpha)
    labels = orbit_labels_gf2(n_states, cond, flip, inv)
    return OrbitPartition(2, space.dim, _blocks_from_labels(labels))


def _enumerate_generic(
    space: SymplecticSpace, step: Callable[[FieldVector, int, int], FieldVector], budget
) -> OrbitPartition:
    p, n = space.p, space.dim
    n_states = _check_budget(space, budget)
    visited = [False] * n_states
    blocks = []
    for seed in range(n_states):
        if visited[seed]:
            continue
        visited[seed] = True
        block = [seed]
        queue = deque([seed])
        while queue:
            code = queue.popleft()
            x = FieldVector.from_code(p, n, code)
            for si in range(len(space.spanning_set)):
                for k in range(1, p):
                    nxt = step(x, si, k).to_code()
                    if not visited[nxt]:
                        visited[nxt] = True
                        block.append(nxt)
                        queue.append(nxt)
        blocks.append(frozenset(block))
    return OrbitPartition(p, n, tuple(blocks))


def enumerate_dual_orbits(space: SymplecticSpace, budget: Optional[int] = None) -> OrbitPartition:
    """Orbits of all functionals under the dual transvection generators."""
    if space.p == 2:
        return _enumerate_gf2(space, "dual", None, budget)
    us = [space.gram.mat_vec(s) for s in space.spanning_set]

    def step(a: FieldVector, si: int, k: int) -> FieldVector:
        c = (k * a.dot(space.spanning_set[si])) % space.p
        return a + us[si].scale(c)

    return _enumerate_generic(space, step, budget)


def enumerate_vector_orbits(space: SymplecticSpace, budget: Optional[int] = None) -> OrbitPartition:
    """Orbits of all vectors under the transvection generators."""
    if space.p == 2:
        return _enumerate_gf2(space, "vector", None, budget)
    us = [space.gram.mat_vec(s) for s in space.spanning_set]

    def step(x: FieldVector, si: int, k: int) -> FieldVector:
        c = (k * us[si].dot(x)) % space.p  # omega(x, s)
        return x + space.spanning_set[si].scale(c)

    return _enumerate_generic(space, step, budget)


def enumerate_affine_orbits(
    space: SymplecticSpace, alpha: Functional, budget: Optional[int] = None
) -> OrbitPartition:
    """Orbits of all vectors under the affine transvection generators for alpha."""
    if space.p == 2:
        return _enumerate_gf2(space, "affine", alpha, budget)
    us = [space.gram.mat_vec(s) for s in space.spanning_set]

    def step(x: FieldVector, si: int, k: int) -> FieldVector:
        s = space.spanning_set[si]
        c = (k * ((us[si].dot(x) + alpha(s)) % space.p)) % space.p
        return x + s.scale(c)

    return _enumerate_generic(space, step, budget)
