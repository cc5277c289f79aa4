"""Inner-product spaces over Z/2 and their quadratic refinements.

Values of a refinement live in the cyclic group of order 4 formed by the
half-integers modulo 2.  We store them in half-units ``q`` (the value is
``q/2``), so group addition is addition of ``q`` modulo 4 and the copy of
Z/2 sitting inside sends the bit 1 to ``q = 2``.  Classes whose basis
pairing has even self-intersection (annulus type) carry integer values;
odd self-intersection (Moebius type) carries half-integer values.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError, DimensionError, InvalidFormError, ParityError
from .gf2 import BitMatrix, BitVector, _pack_words, _vector_words, rank_kernel

_Q_NAMES = ("0", "1/2", "1", "3/2")

# above this dimension, evaluation batches the popcounts through numpy
_LARGE_DIM = 256


@dataclass(frozen=True, slots=True)
class HValue:
    """Element of the order-4 value group, stored in half-units q (value q/2)."""

    q: int = 0

    def __post_init__(self):
        if self.q not in (0, 1, 2, 3):
            raise ValueError(f"q must be one of 0..3, got {self.q}")

    @classmethod
    def from_bit(cls, bit: int) -> "HValue":
        """Embed Z/2: the intersection value 1 maps to q = 2 (i.e. the value 1)."""
        if bit not in (0, 1):
            raise ValueError(f"not a bit: {bit!r}")
        return cls(2 * bit)

    def __add__(self, other: "HValue") -> "HValue":
        return HValue((self.q + other.q) & 3)

    def __sub__(self, other: "HValue") -> "HValue":
        return HValue((self.q - other.q) & 3)

    def __neg__(self) -> "HValue":
        return HValue((-self.q) & 3)

    def __mul__(self, k: int) -> "HValue":
        return HValue((self.q * k) & 3)

    __rmul__ = __mul__

    @property
    def is_integer(self) -> bool:
        return self.q % 2 == 0

    def as_bit(self) -> int:
        """Read an integer value as the bit it embeds; rejects half-integers."""
        if self.q % 2:
            raise ParityError(f"value {self} is not in the integer part")
        return (self.q >> 1) & 1

    def __str__(self) -> str:
        return _Q_NAMES[self.q]

    def __repr__(self) -> str:
        return f"HValue({self.q})"


def _coerce_value(v) -> HValue:
    return v if isinstance(v, HValue) else HValue(v)


@dataclass(frozen=True)
class Violation:
    """One failed invariant: its name, a description, and witness data."""

    rule: str
    detail: str
    witness: tuple[str, ...] = ()


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "pass": self.passed,
            "violations": [
                {"rule": v.rule, "detail": v.detail, "witness": list(v.witness)}
                for v in self.violations
            ],
            "info": dict(self.info),
        }

    def __str__(self) -> str:
        if self.passed:
            return "pass"
        return "; ".join(f"{v.rule}: {v.detail}" for v in self.violations)


@dataclass(frozen=True)
class InnerSpace:
    """A based (Z/2)-space with a symmetric bilinear pairing on the basis."""

    dimension: int
    pairing: BitMatrix
    _upper_cache: object = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be positive")
        if self.pairing.rows != self.dimension or self.pairing.cols != self.dimension:
            raise DimensionError(
                f"pairing must be {self.dimension}x{self.dimension}, "
                f"got {self.pairing.rows}x{self.pairing.cols}"
            )

    def _upper_rows(self):
        """Row i of the pairing restricted to columns > i, packed; cached."""
        if self._upper_cache is None:
            ints = tuple(
                row >> (i + 1) << (i + 1)
                for i, row in enumerate(self.pairing.row_bits)
            )
            words = _pack_words(ints, self.dimension) if self.dimension >= _LARGE_DIM else None
            object.__setattr__(self, "_upper_cache", (ints, words))
        return self._upper_cache

    @classmethod
    def standard_symplectic(cls, genus: int) -> "InnerSpace":
        """Block sum of genus copies of the hyperbolic plane [[0,1],[1,0]]."""
        if genus < 1:
            raise ValueError("genus must be >= 1")
        d = 2 * genus
        rows = []
        for i in range(d):
            rows.append(1 << (i + 1) if i % 2 == 0 else 1 << (i - 1))
        return cls(d, BitMatrix(d, d, tuple(rows)))

    @classmethod
    def diagonal(cls, dimension: int) -> "InnerSpace":
        """Identity pairing: every basis class has odd self-intersection."""
        if dimension < 1:
            raise ValueError("dimension must be positive")
        return cls(dimension, BitMatrix.identity(dimension))

    def intersection(self, x: BitVector, y: BitVector) -> int:
        """The pairing x . y, a bit."""
        if x.length != self.dimension or y.length != self.dimension:
            raise DimensionError(
                f"vectors of lengths {x.length}, {y.length} in dimension {self.dimension}"
            )
        acc = 0
        yb = y.bits
        xb = x.bits
        rows = self.pairing.row_bits
        while xb:
            low = xb & -xb
            acc ^= (rows[low.bit_length() - 1] & yb).bit_count()
            xb ^= low
        return acc & 1

    def pairing_vector(self, x: BitVector) -> BitVector:
        """The vector Qx, whose dot with y gives the pairing y . x."""
        return self.pairing.apply(x)

    def validate(self) -> ValidationReport:
        """Check symmetry and non-degeneracy of the pairing."""
        violations = []
        arr = self.pairing.to_bit_array()
        if not np.array_equal(arr, arr.T):
            i, j = np.argwhere(arr != arr.T)[0]
            violations.append(
                Violation(
                    "symmetry",
                    f"pairing[{i}][{j}] != pairing[{j}][{i}]",
                    (str(int(i)), str(int(j))),
                )
            )
        rank, kernel = rank_kernel(self.pairing)
        if rank != self.dimension:
            violations.append(
                Violation(
                    "nondegeneracy",
                    f"pairing has rank {rank} < {self.dimension}",
                    (str(kernel[0]),) if kernel else (),
                )
            )
        return ValidationReport(tuple(violations), {"rank": rank})


@dataclass(frozen=True)
class QuadraticRefinement:
    """A quadratic refinement of the pairing: determined by its basis values.

    The value on an arbitrary vector is the closed-form support expansion
        value(x) = sum of basis values over the support of x
                 + embedded pairing of every support pair i < j,
    which extends the basis data to the unique function satisfying the
    refinement law value(x+y) = value(x) + value(y) + embed(x . y).
    """

    space: InnerSpace
    basis_values: tuple[HValue, ...]
    _q_cache: object = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        values = tuple(_coerce_value(v) for v in self.basis_values)
        object.__setattr__(self, "basis_values", values)
        if len(values) != self.space.dimension:
            raise DimensionError(
                f"{len(values)} basis values for dimension {self.space.dimension}"
            )

    @property
    def dimension(self) -> int:
        return self.space.dimension

    def evaluate(self, x: BitVector) -> HValue:
        """Value of the form on x, in the order-4 group.

        Sum of the basis values on the support of x, plus the embedded
        pairing of every support pair i < j, all mod 4 in half-units.
        """
        d = self.space.dimension
        if x.length != d:
            raise DimensionError(f"vector length {x.length} in dimension {d}")
        if d >= _LARGE_DIM:
            return self._evaluate_large(x)
        upper, _ = self.space._upper_rows()
        full = x.bits
        remaining = full
        q = 0
        pair_count = 0
        while remaining:
            low = remaining & -remaining
            i = low.bit_length() - 1
            remaining ^= low
            q += self.basis_values[i].q
            pair_count += (upper[i] & full).bit_count()
        return HValue((q + 2 * pair_count) & 3)

    def _evaluate_large(self, x: BitVector) -> HValue:
        d = self.space.dimension
        if self._q_cache is None:
            arr = np.array([v.q for v in self.basis_values], dtype=np.int64)
            object.__setattr__(self, "_q_cache", arr)
        nbytes = (d + 7) // 8
        coords = np.unpackbits(
            np.frombuffer(x.bits.to_bytes(nbytes, "little"), dtype=np.uint8),
            bitorder="little",
        )[:d]
        support = np.nonzero(coords)[0]
        q = int(self._q_cache[support].sum())
        _, upper_words = self.space._upper_rows()
        xw = _vector_words(x.bits, d)
        pair_count = int(
            np.bitwise_count(upper_words[support] & xw).sum(dtype=np.int64)
        )
        return HValue((q + 2 * pair_count) & 3)

    def validate(self, exhaustive: bool = False, exhaustive_limit: int = 10) -> ValidationReport:
        """Check the diagonal parity constraint; optionally re-check the
        refinement law and the parity law on every vector (small dimensions)."""
        violations = []
        Q = self.space.pairing
        for i, v in enumerate(self.basis_values):
            if v.q % 2 != Q[i, i]:
                violations.append(
                    Violation(
                        "parity",
                        f"basis value {i} is {v} but the class has "
                        f"self-intersection {Q[i, i]}",
                        (str(i),),
                    )
                )
        d = self.space.dimension
        if exhaustive and d <= exhaustive_limit:
            violations.extend(self._exhaustive_violations())
        return ValidationReport(tuple(violations))

    def _exhaustive_violations(self) -> list[Violation]:
        d = self.space.dimension
        values = [self.evaluate(BitVector(d, b)).q for b in range(1 << d)]
        paired = [self.space.pairing_vector(BitVector(d, b)).bits for b in range(1 << d)]
        out = []
        for x in range(1 << d):
            self_pair = (x & paired[x]).bit_count() & 1
            if (2 * values[x]) & 3 != (2 * self_pair) & 3:
                out.append(
                    Violation(
                        "parity_law",
                        f"2*value(x) != embed(x.x) at x={format(x, f'0{d}b')[::-1]}",
                        (format(x, f"0{d}b")[::-1],),
                    )
                )
        for x in range(1 << d):
            vx = values[x]
            px = paired[x]
            for y in range(1 << d):
                if values[x ^ y] != (vx + values[y] + 2 * ((px & y).bit_count() & 1)) & 3:
                    out.append(
                        Violation(
                            "functional_equation",
                            "value(x+y) != value(x) + value(y) + embed(x.y) at "
                            f"x={format(x, f'0{d}b')[::-1]} y={format(y, f'0{d}b')[::-1]}",
                            (format(x, f"0{d}b")[::-1], format(y, f"0{d}b")[::-1]),
                        )
                    )
                    if len(out) > 8:
                        return out
        return out


def _value_table(form: QuadraticRefinement) -> np.ndarray:
    """q-values of the form on all 2^d vectors, indexed by packed bits.

    Built by doubling: extending a subset by basis vector j adds the basis
    value of j plus twice its pairing with the subset.
    """
    d = form.space.dimension
    rows = form.space.pairing.row_bits
    values = np.zeros(1, dtype=np.uint8)
    for j in range(d):
        pair = np.zeros(1, dtype=np.uint8)
        for k in range(j):
            bit = (rows[k] >> j) & 1
            pair = np.concatenate([pair, pair ^ bit])
        values = np.concatenate([values, (values + form.basis_values[j].q + 2 * pair) % 4])
    return values


def gauss_invariant(form: QuadraticRefinement, limit: int = 24) -> int:
    """Phase of the exponential sum of the form, as a residue mod 8.

    Sums i^q(x) over all 2^d vectors with exact Gaussian-integer
    arithmetic; a valid form yields magnitude 2^(d/2) and the sum equals
    2^(d/2) * exp(2*pi*i * beta / 8) for the returned beta.
    """
    d = form.space.dimension
    if d > limit:
        raise CapacityError(f"dimension {d} exceeds the exhaustive limit {limit}")
    counts = np.bincount(_value_table(form), minlength=4)
    re = int(counts[0]) - int(counts[2])
    im = int(counts[1]) - int(counts[3])
    if re * re + im * im != 1 << d:
        raise InvalidFormError(
            f"exponential sum {re}{im:+d}i does not have magnitude 2^({d}/2); "
            "the basis values violate the refinement law"
        )
    if im == 0:
        return 0 if re > 0 else 4
    if re == 0:
        return 2 if im > 0 else 6
    if abs(re) != abs(im):  # cannot happen when the magnitude check passed
        raise InvalidFormError(f"exponential sum {re}{im:+d}i is off the eighth-roots grid")
    if re > 0:
        return 1 if im > 0 else 7
    return 3 if im > 0 else 5
