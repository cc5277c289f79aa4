"""Heegaard diagram data model: curve systems with a quadratic refinement.

A diagram holds n a-curves (compressible on one side) and n b-curves
(compressible on the other) as homology classes over a common inner
space, together with the refinement induced by a reference immersion of
the splitting surface.  Validity means: symmetric non-degenerate pairing,
parity-consistent form, both curve systems isotropic, and the form
vanishing on every a-curve (hence on their whole span).
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Sequence

from .errors import ConstructionError, DimensionError, ParityError
from .forms import (
    BitMatrix,
    BitVector,
    HValue,
    InnerSpace,
    QuadraticRefinement,
    ValidationReport,
    Violation,
)
from .gf2 import rank_kernel
from .twists import TwistWord, pullback


@dataclass(frozen=True)
class HeegaardDiagram:
    space: InnerSpace
    form: QuadraticRefinement
    a_curves: tuple[BitVector, ...]
    b_curves: tuple[BitVector, ...]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "a_curves", tuple(self.a_curves))
        object.__setattr__(self, "b_curves", tuple(self.b_curves))
        if self.form.space != self.space:
            raise DimensionError("form and diagram live on different spaces")
        if len(self.a_curves) != len(self.b_curves):
            raise DimensionError(
                f"{len(self.a_curves)} a-curves but {len(self.b_curves)} b-curves"
            )
        d = self.space.dimension
        for name, curves in (("a", self.a_curves), ("b", self.b_curves)):
            for k, c in enumerate(curves):
                if c.length != d:
                    raise DimensionError(
                        f"{name}-curve {k} has length {c.length} in dimension {d}"
                    )

    @property
    def dimension(self) -> int:
        return self.space.dimension

    @property
    def curve_count(self) -> int:
        return len(self.a_curves)


def _isotropy_violations(space: InnerSpace, curves: Sequence[BitVector], rule: str) -> list[Violation]:
    paired = [space.pairing_vector(c).bits for c in curves]
    out = []
    for i, ci in enumerate(curves):
        for j in range(i, len(curves)):
            if (ci.bits & paired[j]).bit_count() & 1:
                out.append(
                    Violation(
                        rule,
                        f"curves {i} and {j} pair to 1",
                        (str(i), str(j)),
                    )
                )
    return out


def validate_diagram(diagram: HeegaardDiagram) -> ValidationReport:
    """Check every diagram invariant; report Lagrangian status as info.

    Violations carry the rule names: symmetry, nondegeneracy, parity,
    a_isotropy, b_isotropy, vanishing_on_a.
    """
    violations = list(diagram.space.validate().violations)
    violations.extend(diagram.form.validate().violations)
    a_iso = _isotropy_violations(diagram.space, diagram.a_curves, "a_isotropy")
    violations.extend(a_iso)
    violations.extend(_isotropy_violations(diagram.space, diagram.b_curves, "b_isotropy"))
    for k, a in enumerate(diagram.a_curves):
        value = diagram.form.evaluate(a)
        if value != HValue(0):
            violations.append(
                Violation(
                    "vanishing_on_a",
                    f"form takes value {value} on a-curve {k}",
                    (str(k), str(a)),
                )
            )
    if diagram.a_curves:
        a_rank, _ = rank_kernel(BitMatrix.from_rows(list(diagram.a_curves)))
    else:
        a_rank = 0
    lagrangian = not a_iso and 2 * a_rank == diagram.dimension
    return ValidationReport(
        tuple(violations),
        {"lagrangian": lagrangian, "a_rank": a_rank},
    )


def standard_orientable(genus: int, b_values: Sequence[HValue | int]) -> HeegaardDiagram:
    """The canonical genus-g diagram: hyperbolic-plane blocks, a-curve on
    the first leg and b-curve on the second leg of each block.

    The form vanishes on every a-curve; values on the b-curves are caller
    data and must be integers (even q) since b-curves are isotropic.
    """
    if genus < 1:
        raise ValueError("genus must be >= 1")
    values = [v if isinstance(v, HValue) else HValue(v) for v in b_values]
    if len(values) != genus:
        raise DimensionError(f"{len(values)} b-values for genus {genus}")
    for k, v in enumerate(values):
        if not v.is_integer:
            raise ParityError(f"b-value {k} is {v}; isotropic classes take integer values")
    space = InnerSpace.standard_symplectic(genus)
    d = 2 * genus
    basis_values = []
    for i in range(d):
        basis_values.append(HValue(0) if i % 2 == 0 else values[i // 2])
    form = QuadraticRefinement(space, tuple(basis_values))
    a_curves = tuple(BitVector.unit(d, 2 * k) for k in range(genus))
    b_curves = tuple(BitVector.unit(d, 2 * k + 1) for k in range(genus))
    return HeegaardDiagram(
        space,
        form,
        a_curves,
        b_curves,
        {"orientable": True, "genus": genus, "description": f"standard genus-{genus} diagram"},
    )


def diagonal_diagram(
    dimension: int,
    form_q: Sequence[int],
    a_curves: Sequence[BitVector],
    b_curves: Sequence[BitVector],
) -> HeegaardDiagram:
    """Assemble a diagram over the identity pairing and validate it.

    Every basis class has odd self-intersection, so the basis values must
    be half-integers (q in {1, 3}).  Rejects any invariant failure with a
    ConstructionError carrying the report.
    """
    if len(form_q) != dimension:
        raise DimensionError(f"{len(form_q)} form values for dimension {dimension}")
    for i, q in enumerate(form_q):
        if q not in (1, 3):
            raise ParityError(f"form value {i} has q={q}; diagonal classes need q in {{1, 3}}")
    space = InnerSpace.diagonal(dimension)
    form = QuadraticRefinement(space, tuple(HValue(q) for q in form_q))
    diagram = HeegaardDiagram(
        space,
        form,
        tuple(a_curves),
        tuple(b_curves),
        {"orientable": False, "description": f"diagonal pairing on {dimension} classes"},
    )
    report = validate_diagram(diagram)
    if not report.passed:
        raise ConstructionError(f"diagram rejected: {report}", report)
    return diagram


def scramble(diagram: HeegaardDiagram, word: TwistWord) -> HeegaardDiagram:
    """Transport the whole diagram through the word's homology action.

    Curves map forward; the form is pulled back along the inverse word
    (the reversed word, since each twist is an involution), so values on
    transported classes are preserved and validity survives.
    """
    if word.space != diagram.space:
        raise DimensionError("word and diagram live on different spaces")
    return HeegaardDiagram(
        diagram.space,
        pullback(diagram.form, word.reversed()),
        tuple(word.apply_all(diagram.a_curves)),
        tuple(word.apply_all(diagram.b_curves)),
        dict(diagram.metadata),
    )


# 64-bit linear congruential generator, Knuth's MMIX constants.  Fixed here
# so generated instances are bit-identical across platforms and languages.
_LCG_MULT = 6364136223846793005
_LCG_INC = 1442695040888963407
_MASK64 = (1 << 64) - 1


class SeededStream:
    """Deterministic word stream for instance generation (not cryptographic)."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_word(self) -> int:
        self._state = (self._state * _LCG_MULT + _LCG_INC) & _MASK64
        return self._state

    def next_below(self, bound: int) -> int:
        # use the high half: the low bits of an LCG have short periods
        return (self.next_word() >> 32) % bound

    def next_bits(self, length: int) -> int:
        bits = 0
        for off in range(0, length, 64):
            bits |= self.next_word() << off
        return bits & ((1 << length) - 1)


def random_diagram(
    seed: int,
    genus: int,
    targets_nonzero: bool = False,
    scramble_length: int | None = None,
) -> HeegaardDiagram:
    """Deterministic pseudo-random instance: a standard diagram with random
    b-values, scrambled by a random twist word (default length 4 * genus).

    The a-system of the result is Lagrangian, so the twist solver always
    succeeds on these instances.  Identical inputs give identical output
    on every platform.
    """
    if genus < 1:
        raise ValueError("genus must be >= 1")
    stream = SeededStream(seed)
    values = [HValue(2 * stream.next_below(2)) for _ in range(genus)]
    if targets_nonzero and all(v == HValue(0) for v in values):
        values[stream.next_below(genus)] = HValue(2)
    base = standard_orientable(genus, values)
    d = base.dimension
    length = 4 * genus if scramble_length is None else scramble_length
    curves = []
    while len(curves) < length:
        bits = stream.next_bits(d)
        if bits:
            curves.append(BitVector(d, bits))
    word = TwistWord.from_curves(base.space, curves)
    result = scramble(base, word)
    return dataclasses.replace(
        result,
        metadata={
            "orientable": True,
            "genus": genus,
            "seed": seed,
            "scramble_length": length,
            "nonzero_targets": targets_nonzero,
            "description": f"seeded genus-{genus} instance",
        },
    )
