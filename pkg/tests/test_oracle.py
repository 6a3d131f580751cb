import random

import pytest

from transvect.errors import BudgetExceeded
from transvect.field import FieldVector
from transvect.game import space_from_graph
from transvect.graphs import FormGraph, build_form_graph, e6_graph
from transvect.oracle import (
    enumerate_affine_orbits,
    enumerate_dual_orbits,
    enumerate_vector_orbits,
)
from transvect.symplectic import (
    Functional,
    QuadraticForm,
    SymplecticSpace,
    dual_transvection_apply,
    omega_map,
    quadratic_eval,
    transvection_apply,
)

from conftest import random_spanning_space, random_vector


def test_dual_orbits_edgeless():
    sp = SymplecticSpace.create(2, [[0, 0], [0, 0]])
    part = enumerate_dual_orbits(sp)
    assert all(len(b) == 1 for b in part.blocks)
    assert part.n_states == 4


def test_dual_orbits_k2():
    sp = space_from_graph(FormGraph.from_edges(2, [(0, 1)]))
    part = enumerate_dual_orbits(sp)
    assert sorted(sorted(b) for b in part.blocks) == [[0], [1, 2, 3]]


def test_partition_generator_closed():
    rng = random.Random(0)
    for _ in range(30):
        p = rng.choice([2, 3])
        dim = rng.randint(1, 3)
        sp = random_spanning_space(rng, p, dim, rng.randint(dim, dim + 2))
        part = enumerate_dual_orbits(sp)
        assert part.n_states == p**dim
        for block in part.blocks:
            for code in block:
                f = Functional(FieldVector.from_code(p, dim, code))
                for s in sp.spanning_set:
                    for k in range(1, p):
                        image = dual_transvection_apply(sp, s, k, f)
                        assert image.to_code() in block


def test_vector_orbits_kernel_singletons():
    rng = random.Random(1)
    for _ in range(30):
        p = rng.choice([2, 3])
        dim = rng.randint(1, 3)
        sp = random_spanning_space(rng, p, dim, rng.randint(dim, dim + 2))
        part = enumerate_vector_orbits(sp)
        for code in range(p**dim):
            x = FieldVector.from_code(p, dim, code)
            if omega_map(sp, x).is_zero:
                assert len(part.blocks[part.block_of(code)]) == 1


def test_vector_orbits_gf3_nondegenerate():
    sp = SymplecticSpace.create(3, [[0, 1], [2, 0]])
    part = enumerate_vector_orbits(sp)
    assert sorted(sorted(b) for b in part.blocks) == [[0], list(range(1, 9))]


def test_vector_orbits_e6_split_by_q():
    sp = space_from_graph(e6_graph())
    q = QuadraticForm.from_gram(sp.gram)
    part = enumerate_vector_orbits(sp)
    blocks = sorted((sorted(b) for b in part.blocks), key=len)
    assert len(blocks) == 3  # {0} plus the two Q classes
    assert blocks[0] == [0]
    for block in blocks[1:]:
        values = {quadratic_eval(q, FieldVector.from_code(2, 6, c)) for c in block}
        assert len(values) == 1


def test_affine_alpha_zero_reduces_to_vector_orbits():
    rng = random.Random(2)
    for _ in range(20):
        p = rng.choice([2, 3])
        dim = rng.randint(1, 3)
        sp = random_spanning_space(rng, p, dim, rng.randint(dim, dim + 2))
        a = enumerate_affine_orbits(sp, Functional.zero(p, dim))
        v = enumerate_vector_orbits(sp)
        assert a.blocks == v.blocks


def test_affine_gf3_connected_one_nonsingleton():
    rng = random.Random(3)
    done = 0
    while done < 25:
        p = rng.choice([3, 5])
        dim = rng.randint(1, 3)
        sp = random_spanning_space(rng, p, dim, rng.randint(dim, dim + 2))
        if not build_form_graph(sp).is_connected():
            continue
        alpha = Functional(random_vector(rng, p, dim))
        part = enumerate_affine_orbits(sp, alpha)
        assert sum(1 for b in part.blocks if len(b) > 1) <= 1
        done += 1


def test_affine_orthogonal_split_by_q_plus_alpha():
    sp = space_from_graph(e6_graph())
    q = QuadraticForm.from_gram(sp.gram)
    rng = random.Random(4)
    for _ in range(4):
        alpha = Functional(random_vector(rng, 2, 6))
        part = enumerate_affine_orbits(sp, alpha)
        nonsingleton = [b for b in part.blocks if len(b) > 1]
        assert len(nonsingleton) <= 2
        for block in nonsingleton:
            values = {
                (quadratic_eval(q, FieldVector.from_code(2, 6, c)) + alpha(FieldVector.from_code(2, 6, c))) % 2
                for c in block
            }
            assert len(values) == 1


def test_block_sizes_sum():
    rng = random.Random(5)
    for _ in range(20):
        p = rng.choice([2, 3, 5])
        dim = rng.randint(1, 3)
        sp = random_spanning_space(rng, p, dim, rng.randint(dim, dim + 2))
        part = enumerate_dual_orbits(sp)
        assert sum(len(b) for b in part.blocks) == p**dim


def test_budget_guard():
    sp = SymplecticSpace.create(2, [[0, 1], [1, 0]])
    with pytest.raises(BudgetExceeded):
        enumerate_dual_orbits(sp, budget=3)


def test_budget_env_override(monkeypatch):
    sp = SymplecticSpace.create(2, [[0, 1], [1, 0]])
    monkeypatch.setenv("TRANSVECT_BUDGET", "3")
    with pytest.raises(BudgetExceeded):
        enumerate_dual_orbits(sp)
    monkeypatch.setenv("TRANSVECT_BUDGET", "1000")
    assert enumerate_dual_orbits(sp).n_states == 4


def test_vector_orbit_closure_under_transvections():
    rng = random.Random(6)
    for _ in range(10):
        sp = random_spanning_space(rng, 2, 4, 5)
        part = enumerate_vector_orbits(sp)
        for block in part.blocks:
            for code in block:
                x = FieldVector.from_code(2, 4, code)
                for s in sp.spanning_set:
                    assert transvection_apply(sp, s, 1, x).to_code() in block
