"""Dehn twists as transvections on mod-2 homology.

A twist along a class ``a`` acts on homology by x -> x + (x . a) a; over
Z/2 this is an involution and it preserves the pairing.  Words of twists
act left to right: the first twist in the word is applied first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DimensionError, PreconditionError
from .forms import HValue, InnerSpace, QuadraticRefinement
from .gf2 import BitVector, _pack_words, _vector_words


@dataclass(frozen=True)
class Twist:
    """Transvection along a nonzero isotropic homology class.

    Isotropy (a . a = 0) is what makes the class representable by a
    2-sided curve, and it is exactly the condition under which the
    transvection is an involution and preserves the pairing.
    """

    space: InnerSpace
    curve: BitVector
    # Qa, cached so each application is a single AND + popcount
    _functional_bits: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.curve.length != self.space.dimension:
            raise DimensionError(
                f"curve length {self.curve.length} in dimension {self.space.dimension}"
            )
        if self.curve.is_zero:
            raise PreconditionError("twist along the zero class is the identity; use an empty word")
        functional = self.space.pairing_vector(self.curve)
        if functional.dot(self.curve):
            raise PreconditionError(
                "twist curve has odd self-pairing; no 2-sided representative exists"
            )
        object.__setattr__(self, "_functional_bits", functional.bits)

    def apply(self, x: BitVector) -> BitVector:
        if x.length != self.curve.length:
            raise DimensionError(f"vector length {x.length} in dimension {self.curve.length}")
        if (x.bits & self._functional_bits).bit_count() & 1:
            return BitVector(x.length, x.bits ^ self.curve.bits)
        return x


@dataclass(frozen=True)
class TwistWord:
    """An ordered composition of twists over one space, applied left to right."""

    space: InnerSpace
    twists: tuple[Twist, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(self.twists))
        for t in self.twists:
            if t.space != self.space:
                raise DimensionError("all twists in a word must share the space")

    @classmethod
    def from_curves(cls, space: InnerSpace, curves: Iterable[BitVector]) -> "TwistWord":
        return cls(space, tuple(Twist(space, c) for c in curves))

    def apply(self, x: BitVector) -> BitVector:
        for t in self.twists:
            x = t.apply(x)
        return x

    def apply_all(self, vectors: Sequence[BitVector]) -> list[BitVector]:
        """Apply the word to many vectors; same results as apply, batched.

        Large batches run word-parallel: per twist, one masked XOR over
        the whole batch.
        """
        d = self.space.dimension
        if d < 256 or len(vectors) < 8 or not self.twists:
            return [self.apply(x) for x in vectors]
        for x in vectors:
            if x.length != d:
                raise DimensionError(f"vector length {x.length} in dimension {d}")
        batch = _pack_words([x.bits for x in vectors], d)
        for t in self.twists:
            functional = _vector_words(t._functional_bits, d)
            parity = np.bitwise_count(batch & functional).sum(axis=1, dtype=np.int64) & 1
            hits = np.nonzero(parity)[0]
            if hits.size:
                batch[hits] ^= _vector_words(t.curve.bits, d)
        mask = (1 << d) - 1
        return [
            BitVector(d, int.from_bytes(batch[i].tobytes(), "little") & mask)
            for i in range(len(vectors))
        ]

    def reversed(self) -> "TwistWord":
        """The inverse word: each transvection is its own inverse mod 2."""
        return TwistWord(self.space, self.twists[::-1])

    def __len__(self) -> int:
        return len(self.twists)

    def __iter__(self) -> Iterator[Twist]:
        return iter(self.twists)


def pullback(form: QuadraticRefinement, word: TwistWord) -> QuadraticRefinement:
    """The form composed with the word's homology action.

    The result takes on x the value the original form takes on word(x);
    it is determined by its basis values because the word preserves the
    pairing.
    """
    if word.space != form.space:
        raise DimensionError("word and form live on different spaces")
    d = form.space.dimension
    images = word.apply_all([BitVector.unit(d, i) for i in range(d)])
    return QuadraticRefinement(form.space, tuple(form.evaluate(y) for y in images))


def twist_functional(form: QuadraticRefinement, curve: BitVector) -> BitVector:
    """The pairing vector f = Q.curve of the twist's pullback difference.

    When the form vanishes on the curve, pulling back by the twist changes
    the form by the linear functional x -> embed(x . curve), and dot(f, x)
    computes exactly that bit.  Rows of the solver's system are these
    vectors.
    """
    if curve.length != form.space.dimension:
        raise DimensionError(
            f"curve length {curve.length} in dimension {form.space.dimension}"
        )
    value = form.evaluate(curve)
    if value != HValue(0):
        raise PreconditionError(
            f"the form takes value {value} != 0 on the twist curve; "
            "the pullback difference is not linear there"
        )
    return form.space.pairing_vector(curve)
