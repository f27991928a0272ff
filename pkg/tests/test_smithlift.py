"""Smith normal form over Z and the lifted diagonalization over Z_eps."""

import random

import pytest

from motivic_plumbing import (
    EPS,
    H,
    ONE,
    GwElement,
    GwMatrix,
    IntMatrix,
    Obstruction,
    danielewski,
    diagonalize_zeps,
    kernel_cokernel,
    quadratic_matrix,
    snf_int,
    verify,
)
from conftest import random_gw_matrix, random_int_matrix


def _divisibility_chain(diagonal):
    values = [v for v in diagonal]
    for a, b in zip(values, values[1:]):
        if a == 0:
            assert b == 0
        elif b % a != 0:
            return False
    return True


class TestSnfInt:
    def test_ramanujam_matrix(self):
        m = IntMatrix.from_rows([[4, 5, 2], [5, 3, 0], [2, 0, -1]])
        result = snf_int(m)
        assert result.d.diagonal() == (1, 1, 1)
        assert verify(m, result)

    def test_identity(self):
        for n in (1, 2, 5):
            m = IntMatrix.identity(n)
            result = snf_int(m)
            assert result.d == m
            assert verify(m, result)

    def test_a2_cartan_type(self):
        m = IntMatrix.from_rows([[-2, 1], [1, -2]])
        result = snf_int(m)
        assert result.d.diagonal() == (1, 3)
        assert verify(m, result)

    def test_zero_and_rectangular(self):
        z = IntMatrix.zero(2, 3)
        result = snf_int(z)
        assert result.d == z
        assert verify(z, result)

    def test_random_round_trip(self):
        rng = random.Random(201)
        for _ in range(1000):
            rows = rng.randint(1, 4)
            cols = rng.randint(1, 4)
            m = random_int_matrix(rng, rows, cols)
            result = snf_int(m)
            assert verify(m, result)
            assert abs(result.s.det()) == 1
            assert abs(result.t.det()) == 1
            d = result.d.diagonal()
            assert all(v >= 0 for v in d)
            assert _divisibility_chain(d)

    def test_invariance_under_unimodular_scrambling(self):
        rng = random.Random(202)
        for _ in range(200):
            m = random_int_matrix(rng, 3, 3)
            scrambled = _scramble(rng, m)
            assert snf_int(m).d.diagonal() == snf_int(scrambled).d.diagonal()


def _scramble(rng, m):
    work = m.row_lists()
    for _ in range(6):
        i, j = rng.sample(range(len(work)), 2) if len(work) > 1 else (0, 0)
        if i != j:
            c = rng.randint(-3, 3)
            work[i] = [a + c * b for a, b in zip(work[i], work[j])]
    cols = len(work[0])
    for _ in range(6):
        i, j = rng.sample(range(cols), 2) if cols > 1 else (0, 0)
        if i != j:
            c = rng.randint(-3, 3)
            for row in work:
                row[i] += c * row[j]
    return IntMatrix.from_rows(work)


class TestKernelCokernel:
    def test_path_incidence(self):
        # signed incidence of a 3-vertex path: map from the 2 points
        m = IntMatrix.from_rows([[1, 0], [-1, 1], [0, -1]])
        kc = kernel_cokernel(m)
        assert kc.kernel_rank == 0
        assert kc.cokernel_free_rank == 1
        assert kc.torsion == ()

    def test_zero_one_by_one(self):
        kc = kernel_cokernel(IntMatrix.from_rows([[0]]))
        assert kc.kernel_rank == 1
        assert kc.cokernel_free_rank == 1
        assert kc.torsion == ()

    def test_times_two(self):
        kc = kernel_cokernel(IntMatrix.from_rows([[2]]))
        assert kc.kernel_rank == 0
        assert kc.cokernel_free_rank == 0
        assert kc.torsion == (2,)


class TestDiagonalizeZeps:
    def test_one_by_one_minus_h(self):
        m = GwMatrix.from_rows([[-H]])
        result = diagonalize_zeps(m)
        assert not isinstance(result, Obstruction)
        assert result.d.diagonal() == (H,)  # normalized representative of -h
        assert verify(m, result)

    def test_zero_matrix(self):
        m = GwMatrix.from_rows([[GwElement(0, 0), GwElement(0, 0)]])
        result = diagonalize_zeps(m)
        assert result.d == m
        assert result.s == GwMatrix.identity(1)
        assert result.t == GwMatrix.identity(2)

    def test_danielewski_family(self):
        for n in range(1, 9):
            mu = quadratic_matrix(danielewski(n))
            result = diagonalize_zeps(mu)
            assert not isinstance(result, Obstruction)
            assert verify(mu, result)
            d = result.d.diagonal()
            assert d[:-1] == (ONE,) * (2 * n)
            assert d[-1] == n * H

    def test_already_diagonal_units_unchanged(self):
        m = GwMatrix.from_rows([[ONE, GwElement(0, 0)], [GwElement(0, 0), EPS]])
        result = diagonalize_zeps(m)
        assert result.d.diagonal() == (ONE, ONE)  # eps normalizes to 1
        assert verify(m, result)

    def test_projection_compatibility(self):
        rng = random.Random(203)
        checked = 0
        for _ in range(400):
            m = random_gw_matrix(rng, rng.randint(1, 3), rng.randint(1, 3), bound=3)
            result = diagonalize_zeps(m)
            if isinstance(result, Obstruction):
                assert verify(m.project(1), result.snf_plus)
                assert verify(m.project(-1), result.snf_minus)
                continue
            checked += 1
            assert verify(m, result)
            for sign in (1, -1):
                plus_diag = [abs(v) for v in result.d.project(sign).diagonal()]
                reference = snf_int(m.project(sign)).d.diagonal()
                canonical = snf_int(
                    IntMatrix.from_rows(
                        [[plus_diag[i] if i == j else 0 for j in range(len(plus_diag))]
                         for i in range(len(plus_diag))]
                    ) if plus_diag else IntMatrix(0, 0, ())
                ).d.diagonal()
                assert canonical == reference
            for d in result.d.diagonal():
                n, mm = d.project()
                assert (n - mm) % 2 == 0
        assert checked > 100

    def test_frozen_obstruction_case(self):
        m = GwMatrix.from_rows(
            [[GwElement(-2, -2), GwElement(-2, -2)], [GwElement(-2, 0), GwElement(-1, -1)]]
        )
        result = diagonalize_zeps(m)
        assert isinstance(result, Obstruction)
        assert verify(m.project(1), result.snf_plus)
        assert verify(m.project(-1), result.snf_minus)
        # the partial transforms still satisfy S * D * T = A
        assert result.partial_s @ result.partial_d @ result.partial_t == m
        assert result.pair == ((2, 0), (2, 0))

    def test_gw_det_via_projections(self):
        rng = random.Random(204)
        for _ in range(200):
            m = random_gw_matrix(rng, 3, 3, bound=3)
            d = m.det()
            assert d.project() == (m.project(1).det(), m.project(-1).det())
