"""Constructive twist solver with verifiable certificates.

Each candidate twist along an a-curve changes the form on a vector x by
the bit x . a, so zeroing the form on every b-curve is the linear system
    M . epsilon = t,   M[k][j] = b_k . a_j,   t[k] = value on b_k (a bit).
A certificate records the chosen subset epsilon together with a
transcript obtained by actually applying the twists and re-evaluating the
form, never by reusing the system.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from .diagrams import HeegaardDiagram, validate_diagram
from .errors import CapacityError, DimensionError, PreconditionError, ValidationError
from .forms import HValue, ValidationReport, Violation
from .gf2 import BitMatrix, BitVector, Solution, Unsolvable, solve
from .twists import TwistWord

MINIMAL_WEIGHT_KERNEL_CAP = 20


@dataclass(frozen=True)
class TwistSystem:
    """The solver's linear system over Z/2."""

    matrix: BitMatrix
    target: BitVector


@dataclass(frozen=True)
class Transcript:
    """Form values after the twists, recomputed curve by curve."""

    b_values: tuple[HValue, ...]
    a_values: tuple[HValue, ...]

    @property
    def all_zero(self) -> bool:
        zero = HValue(0)
        return all(v == zero for v in self.b_values) and all(
            v == zero for v in self.a_values
        )


@dataclass(frozen=True)
class TwistCertificate:
    """A solved twist subset plus its verification transcript.

    epsilon[j] = 1 means: twist along a-curve j.  solution_family is a
    kernel basis; epsilon plus any combination of it is also a solution.
    """

    epsilon: BitVector
    solution_family: tuple[BitVector, ...]
    transcript: Transcript

    @property
    def twist_indices(self) -> tuple[int, ...]:
        return self.epsilon.support()


def certificate_word(diagram: HeegaardDiagram, epsilon: BitVector) -> TwistWord:
    """The twist word a certificate denotes: chosen a-curves, ascending index."""
    if epsilon.length != diagram.curve_count:
        raise DimensionError(
            f"epsilon length {epsilon.length} for {diagram.curve_count} curves"
        )
    return TwistWord.from_curves(
        diagram.space, [diagram.a_curves[j] for j in epsilon.support()]
    )


def build_system(diagram: HeegaardDiagram) -> TwistSystem:
    """Assemble the system from a diagram that passes validation."""
    report = validate_diagram(diagram)
    if not report.passed:
        raise ValidationError(f"invalid diagram: {report}", report)
    return _build_system_unchecked(diagram)


def _build_system_unchecked(diagram: HeegaardDiagram) -> TwistSystem:
    space = diagram.space
    n = diagram.curve_count
    paired_a = [space.pairing_vector(a).bits for a in diagram.a_curves]
    rows = []
    for b in diagram.b_curves:
        bits = 0
        for j, pa in enumerate(paired_a):
            bits |= ((b.bits & pa).bit_count() & 1) << j
        rows.append(bits)
    target_bits = 0
    for k, b in enumerate(diagram.b_curves):
        target_bits |= diagram.form.evaluate(b).as_bit() << k
    return TwistSystem(BitMatrix(n, n, tuple(rows)), BitVector(n, target_bits))


def _lexicographic_key(bits: int, length: int) -> int:
    # lexicographic order of the bit-string, coordinate 0 most significant
    key = 0
    for i in range(length):
        key = (key << 1) | ((bits >> i) & 1)
    return key


def _minimal_weight_epsilon(solution: Solution) -> BitVector:
    kernel = solution.kernel_basis
    if len(kernel) > MINIMAL_WEIGHT_KERNEL_CAP:
        raise CapacityError(
            f"kernel dimension {len(kernel)} exceeds the minimal-weight cap "
            f"{MINIMAL_WEIGHT_KERNEL_CAP}"
        )
    n = solution.particular.length
    best_bits = solution.particular.bits
    best = (best_bits.bit_count(), _lexicographic_key(best_bits, n))
    current = solution.particular.bits
    # Gray-code walk over the solution coset: one basis XOR per step
    for step in range(1, 1 << len(kernel)):
        flip = (step & -step).bit_length() - 1
        current ^= kernel[flip].bits
        weight = current.bit_count()
        if weight < best[0] or (
            weight == best[0] and _lexicographic_key(current, n) < best[1]
        ):
            best = (weight, _lexicographic_key(current, n))
            best_bits = current
    return BitVector(n, best_bits)


def solve_twists(
    diagram: HeegaardDiagram, policy: str = "first"
) -> TwistCertificate | Unsolvable:
    """Find a twist subset zeroing the form on every b-curve.

    policy "first" takes the elimination solution with free variables 0;
    "minimal_weight" picks the fewest twists (ties: lexicographically
    smallest epsilon), enumerating the coset up to kernel dimension 20.
    The transcript is recomputed by applying the word, independently of
    the linear system.
    """
    if policy not in ("first", "minimal_weight"):
        raise ValueError(f"unknown policy {policy!r}")
    system = build_system(diagram)
    outcome = solve(system.matrix, system.target)
    if isinstance(outcome, Unsolvable):
        return outcome
    if policy == "minimal_weight":
        epsilon = _minimal_weight_epsilon(outcome)
    else:
        epsilon = outcome.particular
    word = certificate_word(diagram, epsilon)
    transcript = Transcript(
        b_values=tuple(diagram.form.evaluate(y) for y in word.apply_all(diagram.b_curves)),
        a_values=tuple(diagram.form.evaluate(y) for y in word.apply_all(diagram.a_curves)),
    )
    return TwistCertificate(
        epsilon=epsilon,
        solution_family=outcome.kernel_basis,
        transcript=transcript,
    )


def verify_certificate(
    diagram: HeegaardDiagram, certificate: TwistCertificate
) -> ValidationReport:
    """Re-derive the word from epsilon, apply it, and evaluate the form.

    This shares no code path with the system builder: twists are applied
    curve by curve and the form is evaluated fresh, so a pass means the
    framing obstruction really vanishes regardless of how epsilon was
    produced.
    """
    word = certificate_word(diagram, certificate.epsilon)
    violations = []
    for name, curves in (("b", diagram.b_curves), ("a", diagram.a_curves)):
        for k, moved in enumerate(word.apply_all(curves)):
            value = diagram.form.evaluate(moved)
            if value != HValue(0):
                violations.append(
                    Violation(
                        f"{name}_residual",
                        f"form takes value {value} on twisted {name}-curve {k}",
                        (str(k), str(value)),
                    )
                )
    return ValidationReport(tuple(violations), {"twists": list(certificate.twist_indices)})


def reglue(diagram: HeegaardDiagram, certificate: TwistCertificate) -> HeegaardDiagram:
    """Change the gluing by the certified word: b-curves move, the form and
    a-curves stay.  Afterwards the form vanishes on every curve of both
    systems, so re-solving the diagram needs no twists at all."""
    report = verify_certificate(diagram, certificate)
    if not report.passed:
        raise PreconditionError(f"certificate does not verify: {report}")
    word = certificate_word(diagram, certificate.epsilon)
    return dataclasses.replace(
        diagram, b_curves=tuple(word.apply_all(diagram.b_curves))
    )
