"""Quadratic refinements over Z/2, twist transvections, and a certified
solver that zeroes a refinement on the b-curves of a Heegaard diagram."""

from .errors import (
    CapacityError,
    ConstructionError,
    DimensionError,
    DocumentError,
    InvalidFormError,
    ParityError,
    PreconditionError,
    TwistCertError,
    ValidationError,
)
from .gf2 import BitMatrix, BitVector, Solution, Unsolvable, rank_kernel, solve
from .forms import (
    HValue,
    InnerSpace,
    QuadraticRefinement,
    ValidationReport,
    Violation,
    gauss_invariant,
)
from .twists import Twist, TwistWord, pullback, twist_functional
from .diagrams import (
    HeegaardDiagram,
    SeededStream,
    diagonal_diagram,
    random_diagram,
    scramble,
    standard_orientable,
    validate_diagram,
)
from .solver import (
    Transcript,
    TwistCertificate,
    TwistSystem,
    build_system,
    certificate_word,
    reglue,
    solve_twists,
    verify_certificate,
)
from .oracle import brute_force_twists, exhaustive_form_check

__version__ = "0.1.0"

__all__ = [
    "BitMatrix",
    "BitVector",
    "CapacityError",
    "ConstructionError",
    "DimensionError",
    "DocumentError",
    "HValue",
    "HeegaardDiagram",
    "InnerSpace",
    "InvalidFormError",
    "ParityError",
    "PreconditionError",
    "QuadraticRefinement",
    "SeededStream",
    "Solution",
    "Transcript",
    "Twist",
    "TwistCertError",
    "TwistCertificate",
    "TwistSystem",
    "TwistWord",
    "Unsolvable",
    "ValidationError",
    "ValidationReport",
    "Violation",
    "brute_force_twists",
    "build_system",
    "certificate_word",
    "diagonal_diagram",
    "exhaustive_form_check",
    "gauss_invariant",
    "pullback",
    "random_diagram",
    "rank_kernel",
    "reglue",
    "scramble",
    "solve",
    "solve_twists",
    "standard_orientable",
    "twist_functional",
    "validate_diagram",
    "verify_certificate",
]
