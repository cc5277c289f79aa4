import random

import pytest

from twistcert import (
    BitMatrix,
    BitVector,
    CapacityError,
    DimensionError,
    HValue,
    InnerSpace,
    InvalidFormError,
    ParityError,
    QuadraticRefinement,
    gauss_invariant,
)
from twistcert.forms import _value_table

from support import all_vectors, block_space, random_form, random_space


class TestHValue:
    def test_cyclic_of_order_four(self):
        half = HValue(1)
        acc = HValue(0)
        seen = []
        for _ in range(4):
            acc = acc + half
            seen.append(acc.q)
        assert seen == [1, 2, 3, 0]
        assert len({HValue(q) for q in range(4)}) == 4

    def test_embedding_has_order_two(self):
        one = HValue.from_bit(1)
        assert one.q == 2
        assert (one + one).q == 0
        assert HValue.from_bit(0).q == 0

    def test_subtraction_and_negation(self):
        assert (HValue(1) - HValue(3)).q == 2
        assert (-HValue(1)).q == 3
        assert (-HValue(0)).q == 0

    def test_scalar_multiple(self):
        assert (2 * HValue(1)).q == 2
        assert (2 * HValue(3)).q == 2
        assert (3 * HValue(2)).q == 2

    def test_integer_part(self):
        assert HValue(0).is_integer and HValue(2).is_integer
        assert not HValue(1).is_integer
        assert HValue(2).as_bit() == 1
        assert HValue(0).as_bit() == 0
        with pytest.raises(ParityError):
            HValue(3).as_bit()

    def test_display(self):
        assert [str(HValue(q)) for q in range(4)] == ["0", "1/2", "1", "3/2"]

    def test_range_checked(self):
        with pytest.raises(ValueError):
            HValue(4)
        with pytest.raises(ValueError):
            HValue(-1)


class TestInnerSpace:
    def test_standard_symplectic_blocks(self):
        sp = InnerSpace.standard_symplectic(2)
        assert sp.dimension == 4
        expected = BitMatrix.from_strings(["0100", "1000", "0001", "0010"])
        assert sp.pairing == expected

    def test_intersection_examples(self):
        sp = InnerSpace.standard_symplectic(1)
        e1, e2 = BitVector.unit(2, 0), BitVector.unit(2, 1)
        assert sp.intersection(e1, e2) == 1
        assert sp.intersection(BitVector.zeros(2), e2) == 0
        diag = InnerSpace.diagonal(2)
        both = BitVector.from_string("11")
        assert diag.intersection(both, both) == 0

    def test_intersection_symmetric(self):
        rng = random.Random(1)
        sp = random_space(rng, 9)
        for _ in range(100):
            x = BitVector(9, rng.getrandbits(9))
            y = BitVector(9, rng.getrandbits(9))
            assert sp.intersection(x, y) == sp.intersection(y, x)

    def test_intersection_dimension_error(self):
        sp = InnerSpace.diagonal(3)
        with pytest.raises(DimensionError):
            sp.intersection(BitVector.zeros(2), BitVector.zeros(3))

    def test_pairing_vector(self):
        sp = InnerSpace.standard_symplectic(1)
        assert str(sp.pairing_vector(BitVector.unit(2, 0))) == "01"

    def test_validate_standard(self):
        assert InnerSpace.standard_symplectic(1).validate().passed

    def test_validate_degenerate(self):
        sp = InnerSpace(2, BitMatrix.from_strings(["00", "01"]))
        report = sp.validate()
        assert not report.passed
        assert {v.rule for v in report.violations} == {"nondegeneracy"}

    def test_validate_asymmetric(self):
        sp = InnerSpace(2, BitMatrix.from_strings(["01", "00"]))
        report = sp.validate()
        assert any(v.rule == "symmetry" for v in report.violations)

    def test_shape_checked(self):
        with pytest.raises(DimensionError):
            InnerSpace(3, BitMatrix.identity(2))


class TestEvaluate:
    def test_zero_vector(self):
        form = QuadraticRefinement(InnerSpace.standard_symplectic(1), (0, 0))
        assert form.evaluate(BitVector.zeros(2)) == HValue(0)

    def test_cross_term(self):
        form = QuadraticRefinement(InnerSpace.standard_symplectic(1), (0, 0))
        assert form.evaluate(BitVector.from_string("11")) == HValue(2)

    def test_moebius_pair(self):
        form = QuadraticRefinement(InnerSpace.diagonal(2), (1, 1))
        assert form.evaluate(BitVector.from_string("11")) == HValue(2)

    def test_basis_values_returned(self):
        form = QuadraticRefinement(InnerSpace.diagonal(2), (1, 3))
        assert form.evaluate(BitVector.unit(2, 0)) == HValue(1)
        assert form.evaluate(BitVector.unit(2, 1)) == HValue(3)

    def test_dimension_error(self):
        form = QuadraticRefinement(InnerSpace.diagonal(2), (1, 3))
        with pytest.raises(DimensionError):
            form.evaluate(BitVector.zeros(3))

    def test_value_count_checked(self):
        with pytest.raises(DimensionError):
            QuadraticRefinement(InnerSpace.diagonal(2), (1,))

    def test_refinement_law_exhaustive_small(self):
        rng = random.Random(2)
        for d in range(1, 9):
            space = random_space(rng, d)
            form = random_form(rng, space)
            vectors = all_vectors(d)
            for x in vectors:
                for y in vectors:
                    lhs = form.evaluate(x + y)
                    rhs = form.evaluate(x) + form.evaluate(y) + HValue.from_bit(
                        space.intersection(x, y)
                    )
                    assert lhs == rhs

    def test_refinement_law_random_large(self):
        rng = random.Random(3)
        for d in (16, 33, 64):
            space = random_space(rng, d)
            form = random_form(rng, space)
            for _ in range(500):
                x = BitVector(d, rng.getrandbits(d))
                y = BitVector(d, rng.getrandbits(d))
                lhs = form.evaluate(x + y)
                rhs = form.evaluate(x) + form.evaluate(y) + HValue.from_bit(
                    space.intersection(x, y)
                )
                assert lhs == rhs

    def test_parity_law_exhaustive_small(self):
        rng = random.Random(4)
        for d in range(1, 9):
            space = random_space(rng, d)
            form = random_form(rng, space)
            for x in all_vectors(d):
                assert 2 * form.evaluate(x) == HValue.from_bit(space.intersection(x, x))


class TestValidateForm:
    def test_standard_passes(self):
        form = QuadraticRefinement(InnerSpace.standard_symplectic(1), (0, 0))
        assert form.validate().passed
        assert form.validate(exhaustive=True).passed

    def test_parity_violation(self):
        form = QuadraticRefinement(InnerSpace.standard_symplectic(1), (1, 0))
        report = form.validate()
        assert not report.passed
        assert report.violations[0].rule == "parity"
        assert report.violations[0].witness == ("0",)

    def test_moebius_class_passes(self):
        form = QuadraticRefinement(InnerSpace.diagonal(1), (1,))
        assert form.validate(exhaustive=True).passed

    def test_exhaustive_catches_parity_break(self):
        # odd value on an even class breaks the law on pairs as well
        form = QuadraticRefinement(InnerSpace.standard_symplectic(1), (3, 0))
        report = form.validate(exhaustive=True)
        rules = {v.rule for v in report.violations}
        assert "parity" in rules
        assert "functional_equation" in rules or "parity_law" in rules

    def test_exhaustive_skipped_over_limit(self):
        space = block_space("s" * 6)
        form = QuadraticRefinement(space, (0,) * 12)
        report = form.validate(exhaustive=True, exhaustive_limit=10)
        assert report.passed  # only the parity scan ran


class TestGaussInvariant:
    def test_pinned_fixtures(self):
        sym = InnerSpace.standard_symplectic(1)
        assert gauss_invariant(QuadraticRefinement(sym, (0, 0))) == 0
        assert gauss_invariant(QuadraticRefinement(sym, (2, 2))) == 4
        assert gauss_invariant(QuadraticRefinement(InnerSpace.diagonal(1), (1,))) == 1

    def test_matches_direct_exponential_sum(self):
        rng = random.Random(5)
        roots = {0: (1, 0), 1: (0, 1), 2: (-1, 0), 3: (0, -1)}
        for d in range(1, 9):
            space = random_space(rng, d)
            form = random_form(rng, space)
            re = im = 0
            for x in all_vectors(d):
                dre, dim_ = roots[form.evaluate(x).q]
                re += dre
                im += dim_
            beta = gauss_invariant(form)
            assert re * re + im * im == 1 << d
            # reconstruct the phase from the exact coordinates
            octant = {
                (1, 0): 0, (1, 1): 1, (0, 1): 2, (-1, 1): 3,
                (-1, 0): 4, (-1, -1): 5, (0, -1): 6, (1, -1): 7,
            }
            sign = lambda v: (v > 0) - (v < 0)
            assert octant[(sign(re), sign(im))] == beta

    def test_value_table_matches_evaluate(self):
        rng = random.Random(6)
        for d in range(1, 9):
            space = random_space(rng, d)
            form = random_form(rng, space)
            table = _value_table(form)
            direct = [form.evaluate(v).q for v in all_vectors(d)]
            assert list(table) == direct

    def test_invalid_form_rejected(self):
        broken = QuadraticRefinement(InnerSpace.diagonal(1), (0,))
        with pytest.raises(InvalidFormError):
            gauss_invariant(broken)

    def test_capacity(self):
        space = block_space("s" * 13)
        form = QuadraticRefinement(space, (0,) * 26)
        with pytest.raises(CapacityError):
            gauss_invariant(form)

    def test_all_valid_forms_have_invariants(self):
        rng = random.Random(7)
        for _ in range(40):
            d = rng.randint(1, 10)
            form = random_form(rng, random_space(rng, d))
            assert form.validate().passed
            assert 0 <= gauss_invariant(form) < 8
