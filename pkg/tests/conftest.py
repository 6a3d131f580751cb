"""Shared builders for randomized sweeps; all tests use seeded RNGs."""

from __future__ import annotations

import random

import pytest

from transvect.errors import InvalidInput
from transvect.field import FieldVector
from transvect.symplectic import SymplecticSpace


def random_gram_rows(rng: random.Random, p: int, dim: int) -> list[list[int]]:
    rows = [[0] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(i + 1, dim):
            v = rng.randrange(p)
            rows[i][j] = v
            rows[j][i] = (-v) % p
    return rows


def random_space(rng: random.Random, p: int, dim: int) -> SymplecticSpace:
    """Random alternating form on GF(p)^dim with the standard basis."""
    return SymplecticSpace.create(p, random_gram_rows(rng, p, dim))


def random_spanning_space(
    rng: random.Random, p: int, dim: int, nvec: int
) -> SymplecticSpace:
    """Random form plus a random spanning multiset of nvec vectors."""
    while True:
        gram = random_gram_rows(rng, p, dim)
        vecs = [
            FieldVector.make(p, [rng.randrange(p) for _ in range(dim)]) for _ in range(nvec)
        ]
        try:
            return SymplecticSpace.create(p, gram, vecs)
        except InvalidInput:
            continue


def random_vector(rng: random.Random, p: int, dim: int) -> FieldVector:
    return FieldVector.make(p, [rng.randrange(p) for _ in range(dim)])


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
