"""Brute-force reference implementations for the test suite.

Everything here is deliberately slow and direct: subsets are enumerated
one by one, twists are applied with the bare transvection formula, and
the form is re-evaluated on every curve.  Nothing routes through the
linear-system solver or the closed-form pullback, so agreement with the
production path is meaningful evidence.  Capacity caps are intentional.
"""

from __future__ import annotations

from .diagrams import HeegaardDiagram
from .errors import CapacityError
from .forms import HValue, QuadraticRefinement, ValidationReport, Violation
from .gf2 import BitVector

BRUTE_FORCE_CURVE_CAP = 20
EXHAUSTIVE_DIMENSION_CAP = 10


def brute_force_twists(diagram: HeegaardDiagram) -> list[BitVector]:
    """All twist subsets that zero the form on every b-curve.

    Enumerates the 2^n subsets; for each, applies the chosen twists one
    by one (ascending curve index) and evaluates the form from scratch.
    Returned indicators are sorted lexicographically as bit-strings.
    """
    n = diagram.curve_count
    if n > BRUTE_FORCE_CURVE_CAP:
        raise CapacityError(f"{n} curves exceeds the brute-force cap {BRUTE_FORCE_CURVE_CAP}")
    space = diagram.space
    form = diagram.form
    a_curves = diagram.a_curves
    zero = HValue(0)
    feasible = []
    for mask in range(1 << n):
        ok = True
        for b in diagram.b_curves:
            moved = b
            for j in range(n):
                if (mask >> j) & 1:
                    # transvection, written out: x -> x + (x . a_j) a_j
                    if space.intersection(moved, a_curves[j]):
                        moved = moved ^ a_curves[j]
            if form.evaluate(moved) != zero:
                ok = False
                break
        if ok:
            feasible.append(BitVector(n, mask))
    feasible.sort(key=str)
    return feasible


def exhaustive_form_check(form: QuadraticRefinement) -> ValidationReport:
    """Check the refinement law on all pairs and the parity law on all
    vectors, evaluating both sides fresh for every single check."""
    d = form.space.dimension
    if d > EXHAUSTIVE_DIMENSION_CAP:
        raise CapacityError(f"dimension {d} exceeds the exhaustive cap {EXHAUSTIVE_DIMENSION_CAP}")
    violations = []
    vectors = [BitVector(d, bits) for bits in range(1 << d)]
    for x in vectors:
        if form.evaluate(x) * 2 != HValue.from_bit(form.space.intersection(x, x)):
            violations.append(
                Violation("parity_law", f"2*value != embed(x.x) at x={x}", (str(x),))
            )
    for x in vectors:
        for y in vectors:
            expected = (
                form.evaluate(x)
                + form.evaluate(y)
                + HValue.from_bit(form.space.intersection(x, y))
            )
            if form.evaluate(x ^ y) != expected:
                violations.append(
                    Violation(
                        "functional_equation",
                        f"value(x+y) != value(x)+value(y)+embed(x.y) at x={x} y={y}",
                        (str(x), str(y)),
                    )
                )
                if len(violations) > 16:
                    return ValidationReport(tuple(violations))
    return ValidationReport(tuple(violations))
