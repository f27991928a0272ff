"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
report.  Every tolerance is exact; randomized suites are seeded and admit
zero failures.
"""

import math
import random

from motivic_plumbing import (
    EPS,
    H,
    ONE,
    Arrangement,
    ExtensionSpec,
    GwElement,
    GwMatrix,
    HoFib,
    IntMatrix,
    MotiveExpression,
    Obstruction,
    Rational,
    Tate,
    checks,
    classify,
    complement_decomposition,
    coordinate_arrangement,
    danielewski,
    diagonalize_zeps,
    duval_report,
    dynkin,
    homology_at_infinity,
    infinity_decomposition,
    is_unit,
    lift,
    link_decomposition,
    multiplicities,
    ordered_cech,
    oriented_matrix,
    project,
    quadratic_matrix,
    realize,
    snf_int,
    trace_form,
    unit_normalize,
    verify,
)
from motivic_plumbing.gwring import GwModel
from motivic_plumbing.mumford import QUADRATIC, RANK
from conftest import permute_graph, random_cover, random_int_matrix, random_tree_graph


def _report(number: int, text: str) -> None:
    print(f"[acceptance] criterion {number}: PASS - {text}")


def test_criterion_1_duval_firm_rows():
    """A_n (n=1..12), E_7, E_8 reproduce the classical links up to units."""
    for n in range(1, 13):
        link = link_decomposition(dynkin("A", n), QUADRATIC)
        fibers = link.expression.hofib_part()
        assert len(fibers) == 1
        d = unit_normalize(fibers[0].d)
        if n % 2 == 1:
            expected = unit_normalize(((n + 1) // 2) * H)
        elif n % 4 == 0:
            expected = unit_normalize((n // 2) * H + 1)
        else:
            expected = unit_normalize((n // 2 + 1) * H - 1)
        assert d == expected, f"A_{n}: {d} != {expected}"
        assert all(a in (Tate(0, 0), Tate(2, 3)) for a in link.expression.atoms
                   if not isinstance(a, HoFib))

    e7 = link_decomposition(dynkin("E", 7), QUADRATIC)
    (fiber,) = e7.expression.hofib_part()
    assert unit_normalize(fiber.d) == unit_normalize(H)

    e8 = link_decomposition(dynkin("E", 8), QUADRATIC)
    assert e8.expression == MotiveExpression.of(Tate(0, 0), Tate(2, 3))
    assert e8.expression.hofib_part() == ()
    _report(1, "A_1..A_12, E_7, E_8 links match the classical values up to units")


def test_criterion_2_duval_compare_and_report():
    """D_4..D_10 and E_6: exact rank-realization chains plus structured reports."""
    for n in range(4, 11):
        report = duval_report("D", n)
        factors = report["oriented_invariant_factors"]
        if n % 2 == 0:
            assert factors == [1] * (n - 2) + [2, 2]
        else:
            assert factors == [1] * (n - 1) + [4]
        # the quadratic diagonal realizes to the same invariant factors
        link = link_decomposition(dynkin("D", n), QUADRATIC)
        realized = [abs(d.project()[0]) for d in link.factorization.d.diagonal()]
        canonical = snf_int(
            IntMatrix.from_rows(
                [[realized[i] if i == j else 0 for j in range(n)] for i in range(n)]
            )
        ).d.diagonal()
        assert list(canonical) == factors
        assert set(report) >= {"computed_hofib", "reference_hofib", "match", "graph"}

    e6 = duval_report("E", 6)
    assert e6["oriented_invariant_factors"] == [1, 1, 1, 1, 1, 3]
    assert e6["match"] is True
    mismatches = [n for n in range(4, 11) if not duval_report("D", n)["match"]]
    assert mismatches == [4, 6, 8, 10]  # reported, not silenced
    _report(2, "D_n/E_6 rank chains exact; D_even discrepancies reported structurally")


def test_criterion_3_danielewski():
    """Diagonal (1,...,1,n*h) and pairwise distinct links for n = 1..8."""
    seen = set()
    for n in range(1, 9):
        mu = quadratic_matrix(danielewski(n))
        result = diagonalize_zeps(mu)
        assert not isinstance(result, Obstruction)
        assert verify(mu, result)
        diag = result.d.diagonal()
        assert diag == (ONE,) * (2 * n) + (n * H,)
        link = link_decomposition(danielewski(n), QUADRATIC)
        assert link.expression == MotiveExpression.of(Tate(0, 0), HoFib(n * H, 1, 2), Tate(2, 3))
        signature = tuple(unit_normalize(a.d) for a in link.expression.hofib_part())
        assert signature not in seen
        seen.add(signature)
    _report(3, "Danielewski n=1..8 give (1,...,1,n*h) and pairwise distinct links")


def test_criterion_4_ramanujam():
    """Smith normal form (1,1,1) and boundary homology 1 + 1(2)[3]."""
    from motivic_plumbing import ramanujam

    m = IntMatrix.from_rows([[4, 5, 2], [5, 3, 0], [2, 0, -1]])
    result = snf_int(m)
    assert result.d.diagonal() == (1, 1, 1)
    assert verify(m, result)

    hm = homology_at_infinity(ramanujam())
    assert [[p.to_json() for p in deg] for deg in hm.hm] == [
        [{"twist": 0, "free_rank": 1, "torsion": []}],
        [],
        [],
        [{"twist": 2, "free_rank": 1, "torsion": []}],
    ]
    _report(4, "Ramanujam matrix has SNF (1,1,1); homology at infinity is 1 + 1(2)[3]")


def test_criterion_5_arrangements():
    """Coordinate arrangements: binomial multiplicities and at-infinity sums."""
    for e, d in [(1, 1), (2, 3), (4, 6), (8, 10), (12, 14)]:
        arr = coordinate_arrangement(e, d)
        m = multiplicities(arr)
        assert m == {n: math.comb(e, n) for n in range(e + 1)}
        expected = []
        for n in range(e + 1):
            expected += [Tate(n, n)] * math.comb(e, n)
            expected += [Tate(d - n, 2 * d - n - 1)] * math.comb(e, n)
        assert infinity_decomposition(arr) == MotiveExpression(tuple(expected))
    for d in (1, 2, 5, 14):
        assert infinity_decomposition(Arrangement(d, ())) == MotiveExpression.of(
            Tate(0, 0), Tate(d, 2 * d - 1)
        )
    _report(5, "coordinate arrangements give C(e,n) multiplicities and the two-block sum")


def test_criterion_6_property_suites():
    """Randomized invariants, >= 10^3 cases each, zero failures."""
    rng = random.Random(900)

    for _ in range(10_000):
        a = GwElement(rng.randint(-50, 50), rng.randint(-50, 50))
        b = GwElement(rng.randint(-50, 50), rng.randint(-50, 50))
        an, am = project(a)
        bn, bm = project(b)
        assert project(a * b) == (an * bn, am * bm)
        assert project(a + b) == (an + bn, am + bm)

    for _ in range(1000):
        a = GwElement(rng.randint(-99, 99), rng.randint(-99, 99))
        assert lift(*project(a)) == a
        n = rng.randint(-30, 30)
        m = n - 2 * rng.randint(-15, 15)
        assert project(lift(n, m)) == (n, m)

    box = [GwElement(x, y) for x in range(-8, 9) for y in range(-8, 9)]
    for a in box:
        assert is_unit(a) == any(a * b == ONE for b in box)

    for _ in range(1000):
        m = random_int_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        result = snf_int(m)
        assert verify(m, result)
        diag = result.d.diagonal()
        assert all(v >= 0 for v in diag)
        nonzero = [v for v in diag if v]
        assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
        assert all(v == 0 for v in diag[len(nonzero):])

    for _ in range(1000):
        cx = ordered_cech(random_cover(rng))
        for n in range(len(cx.differentials) - 1):
            prod = cx.differentials[n] @ cx.differentials[n + 1]
            assert all(v == 0 for v in prod.entries)

    trees = [random_tree_graph(rng) for _ in range(200)]
    for g in trees:
        q = quadratic_matrix(g)
        assert q == q.transpose()
        assert realize(q, RANK) == oriented_matrix(g)

    for g in trees:
        base = link_decomposition(g, QUADRATIC).expression
        assert link_decomposition(permute_graph(rng, g), QUADRATIC).expression == base

    arr_base = [((1, 0, 0), 0), ((0, 1, 0), 0), ((0, 0, 1), 0), ((1, 1, 1), 1)]
    reference = complement_decomposition(Arrangement(3, tuple(arr_base)))
    reference_m = multiplicities(Arrangement(3, tuple(arr_base)))
    for _ in range(1000):
        shuffled = arr_base[:]
        rng.shuffle(shuffled)
        arr = Arrangement(3, tuple(shuffled))
        assert complement_decomposition(arr) == reference
        assert multiplicities(arr) == reference_m
    _report(6, "all randomized property suites passed with zero failures")


def test_criterion_7_trace_forms():
    """Gaussian, degree-one and totally-real trace forms classify exactly."""
    gaussian = trace_form(ExtensionSpec(Rational(), (1, 0, 1)))
    assert classify(gaussian, GwModel.ZEPS) == H
    assert classify(gaussian, GwModel.RANK) == 2
    assert classify(gaussian, GwModel.SIGNATURE) == 0

    linear = trace_form(ExtensionSpec(Rational(), (-3, 1)))
    assert classify(linear, GwModel.ZEPS) == ONE

    cubic = trace_form(ExtensionSpec(Rational(), (-6, 11, -6, 1)))
    assert classify(cubic, GwModel.SIGNATURE) == 3
    _report(7, "trace forms: Q(i) gives h, rational points give <1>, real cubic has signature 3")
