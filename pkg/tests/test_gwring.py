"""The ring Z_eps, trace forms, and classification of diagonal forms."""

import random
from fractions import Fraction

import pytest

from motivic_plumbing import (
    EPS,
    H,
    ONE,
    ComplexClosed,
    DiagonalForm,
    ExtensionSpec,
    FiniteField,
    Generic,
    GwElement,
    GwModel,
    NoLiftError,
    Rational,
    RealClosed,
    classify,
    is_unit,
    lift,
    project,
    same_up_to_unit,
    square_class_q,
    trace_form,
    unit_normalize,
)
from motivic_plumbing.errors import (
    NotInZEpsImageError,
    NotSeparableError,
    NotUnitError,
    UnsupportedModelError,
)


class TestRingLaws:
    def test_h_squared_is_two_h(self):
        assert H * H == 2 * H == GwElement(2, 2)

    def test_eps_squared_is_one(self):
        assert EPS * EPS == ONE

    def test_eps_times_h_is_h(self):
        assert EPS * H == H

    def test_worked_product(self):
        # (2 + eps)(1 - eps) = 1 - eps, cross-checked through the projections
        a, b = GwElement(2, 1), GwElement(1, -1)
        prod = a * b
        assert prod == GwElement(1, -1)
        an, am = project(a)
        bn, bm = project(b)
        assert project(prod) == (an * bn, am * bm)

    def test_projection_is_ring_homomorphism_randomized(self):
        rng = random.Random(101)
        for _ in range(10_000):
            a = GwElement(rng.randint(-50, 50), rng.randint(-50, 50))
            b = GwElement(rng.randint(-50, 50), rng.randint(-50, 50))
            an, am = project(a)
            bn, bm = project(b)
            assert project(a * b) == (an * bn, am * bm)
            assert project(a + b) == (an + bn, am + bm)

    def test_projection_parity(self):
        rng = random.Random(102)
        for _ in range(1000):
            a = GwElement(rng.randint(-99, 99), rng.randint(-99, 99))
            n, m = project(a)
            assert (n - m) % 2 == 0


class TestProjectLift:
    def test_h_projects_to_two_zero(self):
        assert project(H) == (2, 0)

    def test_minus_mh_projects(self):
        for m in range(1, 6):
            assert project(-m * H) == (-2 * m, 0)

    def test_two_plus_eps(self):
        assert project(GwElement(2, 1)) == (3, 1)

    def test_lift_of_two_zero_is_h(self):
        assert lift(2, 0) == H

    def test_lift_parity_obstruction(self):
        with pytest.raises(NoLiftError):
            lift(1, 0)

    def test_round_trip_on_parity_matched_box(self):
        for n in range(-10, 11):
            for m in range(-10, 11):
                if (n - m) % 2 == 0:
                    assert project(lift(n, m)) == (n, m)
                else:
                    with pytest.raises(NoLiftError):
                        lift(n, m)

    def test_lift_after_project_is_identity(self):
        rng = random.Random(103)
        for _ in range(1000):
            a = GwElement(rng.randint(-99, 99), rng.randint(-99, 99))
            assert lift(*project(a)) == a


class TestUnits:
    def test_one_is_unit(self):
        assert is_unit(ONE)

    def test_h_is_not_unit(self):
        assert not is_unit(H)

    def test_unit_iff_inverse_exists_brute_force(self):
        # exhaustive over the |x|, |y| <= 8 box, inverse searched in the box
        box = [GwElement(x, y) for x in range(-8, 9) for y in range(-8, 9)]
        for a in box:
            has_inverse = any(a * b == ONE for b in box)
            assert is_unit(a) == has_inverse

    def test_unit_iff_inverse_randomized(self):
        rng = random.Random(104)
        for _ in range(1000):
            a = GwElement(rng.randint(-30, 30), rng.randint(-30, 30))
            n, m = project(a)
            assert is_unit(a) == (abs(n) == 1 and abs(m) == 1)

    def test_unit_normalize_canonical(self):
        assert unit_normalize(-H) == H
        assert unit_normalize(GwElement(1, 2)) == GwElement(2, 1)  # eps multiple
        assert unit_normalize(GwElement(0, 0)) == GwElement(0, 0)
        rng = random.Random(105)
        for _ in range(1000):
            a = GwElement(rng.randint(-20, 20), rng.randint(-20, 20))
            canon = unit_normalize(a)
            for u in (ONE, -ONE, EPS, -EPS):
                assert unit_normalize(a * u) == canon
        assert same_up_to_unit(2 * H - 1, 2 * H - EPS)


class TestTraceForm:
    def test_gaussian_field(self):
        # f = t^2 + 1, u = 1: Tr(1) = 2, Tr(i) = 0, Tr(i^2) = -2
        ext = ExtensionSpec(Rational(), (1, 0, 1))
        form = trace_form(ext)
        assert form.entries == (Fraction(2), Fraction(-2))

    def test_degree_one_is_unit_class(self):
        ext = ExtensionSpec(Rational(), (-5, 1), unit=(1,))
        form = trace_form(ext)
        assert form.entries == (Fraction(1),)
        assert classify(form, GwModel.ZEPS) == ONE

    def test_f3_gaussian(self):
        ext = ExtensionSpec(FiniteField(3), (1, 0, 1))
        form = trace_form(ext)
        assert form.rank == 2
        disc = 1
        for v in form.entries:
            disc = disc * int(v) % 3
        assert disc == 2  # class of -4 = class of 2, a nonsquare mod 3
        assert classify(form, GwModel.FINITE_FIELD) == (2, 1)

    def test_rank_equals_degree(self):
        for coeffs in [(2, 3, 1), (-6, 11, -6, 1), (1, 0, 0, 0, 1)]:
            ext = ExtensionSpec(Rational(), coeffs)
            form = trace_form(ext)
            assert form.rank == len(coeffs) - 1
            assert classify(form, GwModel.RANK) == len(coeffs) - 1

    def test_totally_real_signature(self):
        # (t-1)(t-2) and (t-1)(t-2)(t-3): all roots real, full signature
        quad = trace_form(ExtensionSpec(Rational(), (2, -3, 1)))
        assert classify(quad, GwModel.SIGNATURE) == 2
        cubic = trace_form(ExtensionSpec(Rational(), (-6, 11, -6, 1)))
        assert classify(cubic, GwModel.SIGNATURE) == 3

    def test_not_separable(self):
        with pytest.raises(NotSeparableError):
            trace_form(ExtensionSpec(Rational(), (1, 2, 1)))  # (t+1)^2
        with pytest.raises(NotSeparableError):
            trace_form(ExtensionSpec(FiniteField(3), (1, 0, 0, 1)))  # t^3 + 1 = (t+1)^3

    def test_not_unit(self):
        # f = t(t - 1) is separable; t is a zero divisor, not a unit
        with pytest.raises(NotUnitError):
            trace_form(ExtensionSpec(Rational(), (0, -1, 1), unit=(0, 1)))

    def test_generic_base_rejected(self):
        with pytest.raises(UnsupportedModelError):
            trace_form(ExtensionSpec(Generic(), (1, 0, 1)))

    def test_non_prime_field_rejected(self):
        with pytest.raises(UnsupportedModelError):
            trace_form(ExtensionSpec(FiniteField(3, 2), (1, 0, 1)))


class TestClassify:
    def test_hyperbolic_pairing_over_q(self):
        form = DiagonalForm(Rational(), (Fraction(2), Fraction(-2)))
        assert classify(form, GwModel.ZEPS) == H
        assert classify(form, GwModel.RANK) == 2
        assert classify(form, GwModel.SIGNATURE) == 0

    def test_single_entry(self):
        for base in (Rational(), RealClosed(), ComplexClosed()):
            form = DiagonalForm(base, (Fraction(1),))
            assert classify(form, GwModel.ZEPS) == ONE
            assert classify(form, GwModel.RANK) == 1
        assert classify(DiagonalForm(Rational(), (Fraction(1),)), GwModel.SIGNATURE) == 1

    def test_signature_count(self):
        form = DiagonalForm(Rational(), (Fraction(2), Fraction(2), Fraction(2)))
        assert classify(form, GwModel.SIGNATURE) == 3

    def test_unit_times_h_is_h(self):
        # <a> + <-a> = h for assorted units
        for a in (2, 3, 5, 7, 30, Fraction(2, 3)):
            form = DiagonalForm(Rational(), (Fraction(a), Fraction(-a)))
            assert classify(form, GwModel.ZEPS) == H

    def test_square_classes(self):
        form = DiagonalForm(Rational(), (Fraction(4), Fraction(-9), Fraction(49, 4)))
        assert classify(form, GwModel.ZEPS) == GwElement(2, 1)

    def test_unpaired_nonsquare_rejected(self):
        with pytest.raises(NotInZEpsImageError):
            classify(DiagonalForm(Rational(), (Fraction(2), Fraction(3))), GwModel.ZEPS)

    def test_residual_part_rejected_with_diagnostic(self):
        # p^2 for a prime beyond the bound: trial division cannot certify it
        big = 1_000_003
        with pytest.raises(NotInZEpsImageError, match="bound"):
            classify(
                DiagonalForm(Rational(), (Fraction(big**2 * big),)),
                GwModel.ZEPS,
                squarefree_bound=100,
            )

    def test_square_beyond_bound_still_recognized(self):
        # a perfect square is detected by the final isqrt check
        form = DiagonalForm(Rational(), (Fraction(1_000_003**2),))
        assert classify(form, GwModel.ZEPS, squarefree_bound=100) == ONE

    def test_env_var_bound(self, monkeypatch):
        monkeypatch.setenv("MOTIVIC_PLUMB_SQUAREFREE_BOUND", "10")
        sign, mag, residual = square_class_q(Fraction(13**2 * 5))
        assert (sign, mag, residual) == (1, 5 * 13**2, True)
        monkeypatch.setenv("MOTIVIC_PLUMB_SQUAREFREE_BOUND", "1000")
        assert square_class_q(Fraction(13**2 * 5)) == (1, 5, False)

    def test_finite_field_classes(self):
        # over F_7 (-1 nonsquare): nonsquares classify to <-1>
        form = DiagonalForm(FiniteField(7), (3, 1))
        assert classify(form, GwModel.ZEPS) == GwElement(1, 1)
        # over F_5 (-1 square): nonsquares pair to h
        form5 = DiagonalForm(FiniteField(5), (2, 3))
        assert classify(form5, GwModel.ZEPS) == H
        with pytest.raises(NotInZEpsImageError):
            classify(DiagonalForm(FiniteField(5), (2,)), GwModel.ZEPS)

    def test_finite_field_invariants(self):
        assert classify(DiagonalForm(FiniteField(7), (3, 5)), GwModel.FINITE_FIELD) == (2, 0)
        assert classify(DiagonalForm(FiniteField(7), (3, 1)), GwModel.FINITE_FIELD) == (2, 1)

    def test_model_mismatch(self):
        with pytest.raises(UnsupportedModelError):
            classify(DiagonalForm(FiniteField(5), (2,)), GwModel.SIGNATURE)
        with pytest.raises(UnsupportedModelError):
            classify(DiagonalForm(Generic(), (1,)), GwModel.ZEPS)

    def test_classify_rank_of_trace_forms(self):
        for coeffs in [(1, 0, 1), (-6, 11, -6, 1), (2, 0, 0, 1)]:
            form = trace_form(ExtensionSpec(Rational(), coeffs))
            assert classify(form, GwModel.RANK) == len(coeffs) - 1
