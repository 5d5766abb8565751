"""Shared helpers: seeded random map generators and paper-derived fixtures."""

import random

import pytest

from bouquet_dyn import BRANCH_FREE, Letter, MapAction, Word, build_lift
from bouquet_dyn.errors import LiftConstructionError
from bouquet_dyn.pl_oracle import PLLift, lift_branch_period


def random_action(
    rng: random.Random, n_max: int = 3, len_max: int = 4, sign: int | None = None
) -> MapAction:
    """Any sign-homogeneous action; no expansion guarantees."""
    n = rng.randint(1, n_max)
    s = sign if sign is not None else rng.choice((1, -1))
    images = []
    for _ in range(n):
        r = rng.randint(1, len_max)
        images.append(Word(tuple(Letter(rng.randint(1, n), s) for _ in range(r))))
    return MapAction(n, tuple(images), BRANCH_FREE)


def random_expanding_action(
    rng: random.Random,
    n_max: int = 3,
    len_max: int = 4,
    sign: int | None = None,
    max_tries: int = 2000,
) -> tuple[MapAction, PLLift]:
    """A lift-viable action whose branch orbit stays off the integers.

    Every image word visits circle 1 (so the canonical lift exists), the
    image of circle 1 has at least two letters (so no circle maps to
    itself by an isometry), and the lift's branch orbit avoids integers
    to depth 13, matching the declared never-periodic branching point.
    """
    for _ in range(max_tries):
        n = rng.randint(1, n_max)
        s = sign if sign is not None else rng.choice((1, -1))
        images = []
        for j in range(n):
            r = rng.randint(2, len_max) if j == 0 else rng.randint(1, len_max)
            idxs = [1] + [rng.randint(1, n) for _ in range(r - 1)]
            rng.shuffle(idxs)
            images.append(Word(tuple(Letter(i, s) for i in idxs)))
        f = MapAction(n, tuple(images), BRANCH_FREE)
        try:
            lift = build_lift(f)
        except LiftConstructionError:
            continue
        if lift_branch_period(lift, 13) is not None:
            continue
        return f, lift
    raise AssertionError("could not generate a lift-viable action")


def random_matrix(rng: random.Random, n: int, lo: int = -3, hi: int = 3):
    return tuple(
        tuple(rng.randint(lo, hi) for _ in range(n)) for _ in range(n)
    )


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xB0C1E7)
