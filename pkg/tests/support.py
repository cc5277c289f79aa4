"""Shared builders for the test suite."""

from __future__ import annotations

import random

from twistcert import BitMatrix, BitVector, HValue, InnerSpace, QuadraticRefinement


def block_space(pattern: str) -> InnerSpace:
    """Block-diagonal pairing: 's' adds a hyperbolic 2x2 block, 'm' a
    diagonal 1x1 block.  Always symmetric and non-degenerate."""
    rows: list[int] = []
    d = 0
    for p in pattern:
        if p == "s":
            rows.append(1 << (d + 1))
            rows.append(1 << d)
            d += 2
        elif p == "m":
            rows.append(1 << d)
            d += 1
        else:
            raise ValueError(f"unknown block {p!r}")
    return InnerSpace(d, BitMatrix(d, d, tuple(rows)))


def random_pattern(rng: random.Random, dimension: int) -> str:
    """A block pattern of exactly the requested dimension."""
    pattern = []
    left = dimension
    while left > 0:
        if left == 1 or rng.random() < 0.4:
            pattern.append("m")
            left -= 1
        else:
            pattern.append("s")
            left -= 2
    return "".join(pattern)


def random_space(rng: random.Random, dimension: int) -> InnerSpace:
    return block_space(random_pattern(rng, dimension))


def random_form(rng: random.Random, space: InnerSpace) -> QuadraticRefinement:
    """A parity-consistent form with random basis values."""
    Q = space.pairing
    values = tuple(
        HValue((Q[i, i] + 2 * rng.randint(0, 1)) & 3) for i in range(space.dimension)
    )
    return QuadraticRefinement(space, values)


def random_vector(rng: random.Random, length: int, nonzero: bool = False) -> BitVector:
    while True:
        bits = rng.getrandbits(length) if length else 0
        if bits or not nonzero:
            return BitVector(length, bits)


def all_vectors(length: int) -> list[BitVector]:
    return [BitVector(length, bits) for bits in range(1 << length)]
