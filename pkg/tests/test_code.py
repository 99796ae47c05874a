from __future__ import annotations

import itertools
import random
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from delpezzo_codes.code import (
    BudgetExceeded,
    EvaluationFieldMismatch,
    GeneratorMatrix,
    _gray_steps,
    analyze,
    analyze_matrix,
    generator_matrix,
    min_distance,
    nq1_weil_serre,
    rank_dimension,
    weight_distribution,
)
from delpezzo_codes.families import build_instance
from delpezzo_codes.gf import NotPrimePower, field_of_order, rank as field_rank


def _brute_distribution(G: GeneratorMatrix) -> Counter:
    """Every message, every codeword, with plain FieldElement arithmetic."""
    F = G.field
    rows = [[G.entry(i, j) for j in range(G.n)] for i in range(G.k)]
    counts: Counter = Counter()
    for msg in itertools.product(F.elements(), repeat=G.k):
        word = [F.zero] * G.n
        for c, row in zip(msg, rows):
            word = [w + c * r for w, r in zip(word, row)]
        counts[sum(1 for w in word if w)] += 1
    return counts


codes_strategy = st.sampled_from([2, 3, 4, 5, 7, 8, 9]).flatmap(
    lambda q: st.tuples(
        st.just(q),
        st.integers(1, 4).flatmap(
            lambda k: st.integers(1, 9).flatmap(
                lambda n: st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n), min_size=k, max_size=k)
            )
        ),
    )
).filter(lambda t: t[0] ** len(t[1]) <= 5000)


@given(codes_strategy)
@settings(max_examples=150, deadline=None)
def test_enumeration_matches_brute_force(case):
    q, rows = case
    G = GeneratorMatrix(field_of_order(q), np.array(rows))
    brute = _brute_distribution(G)
    assert weight_distribution(G) == dict(brute)
    nonzero = [w for w in brute if w > 0]
    assert min_distance(G) == (min(nonzero) if nonzero else None)
    F = G.field
    assert rank_dimension(G) == field_rank([[G.entry(i, j) for j in range(G.n)] for i in range(G.k)], F)


@pytest.mark.parametrize("q,m", [(2, 1), (2, 5), (3, 3), (4, 3), (5, 2), (9, 2)])
def test_gray_code_visits_every_tuple_once(q, m):
    digits = [0] * m
    seen = {tuple(digits)}
    for j, old, new in _gray_steps(q, m):
        assert digits[j] == old and abs(new - old) == 1
        digits[j] = new
        seen.add(tuple(digits))
    assert len(seen) == q**m


def test_trivial_examples():
    F = field_of_order(3)
    zero = GeneratorMatrix(F, np.zeros((3, 5), dtype=int))
    assert rank_dimension(zero) == 0
    assert weight_distribution(zero) == {0: 27}
    assert min_distance(zero) is None
    ones = GeneratorMatrix(F, np.ones((1, 6), dtype=int))
    assert min_distance(ones) == 6
    dup = GeneratorMatrix(F, np.array([[1, 2, 0], [2, 1, 0]]))
    assert weight_distribution(dup)[0] == 3  # kernel of size q^(k - rank)


def test_budget_guard():
    F = field_of_order(9)
    G = GeneratorMatrix(F, np.ones((9, 4), dtype=int))
    with pytest.raises(BudgetExceeded):
        min_distance(G)
    with pytest.raises(BudgetExceeded):
        weight_distribution(G)


def test_entry_range_and_field_mismatch():
    F = field_of_order(4)
    with pytest.raises(EvaluationFieldMismatch):
        GeneratorMatrix(F, np.array([[0, 4]]))
    with pytest.raises(EvaluationFieldMismatch):
        GeneratorMatrix.from_elements(F, [[field_of_order(2).one]])


@pytest.mark.parametrize("q,expected", [(2, 5), (3, 7), (4, 9), (5, 10), (7, 13), (8, 14), (9, 16), (128, 150), (32, 44)])
def test_nq1(q, expected):
    assert nq1_weil_serre(q) == expected


def test_nq1_rejects_non_prime_powers():
    with pytest.raises(NotPrimePower):
        nq1_weil_serre(12)


@pytest.mark.parametrize(
    "family,q,params",
    [("deg6-a1", 3, (10, 7, 3)), ("deg4-d5", 3, (13, 5, 6)), ("deg5-2a1", 2, (7, 6, 1)), ("deg6-a1", 5, (26, 7, 15)),
     ("deg3-3a2", 2, (7, 4, None))],
)
def test_known_parameters(family, q, params):
    report = analyze(build_instance(family, q))
    n, k, d = params
    assert (report.n, report.k_effective) == (n, k)
    if d is not None:
        assert report.d_min == d
    assert report.ok


def test_deg4_a1_lower_bound():
    report = analyze(build_instance("deg4-a1", 4))
    assert (report.n, report.k_effective) == (13, 5)
    assert report.d_min >= 13 - 9
    assert report.bound_checks["distance_lower_bound"]


def test_report_invariants():
    report = analyze(build_instance("deg6-a1", 3))
    assert sum(report.weight_distribution.values()) == 3**7
    assert report.d_min == min(w for w in report.weight_distribution if w)
    assert report.d_min <= report.n - report.k_effective + 1
    # two lines through a point carry 2q + 1 rational zeros
    assert report.weight_distribution.get(report.n - 7, 0) > 0
    assert report.observed_nq == 7


@pytest.mark.parametrize("family,q", [("deg6-a1", 4), ("deg4-d5", 3), ("deg3-3a2", 4), ("deg4-a2", 3)])
def test_column_rescaling_invariance(family, q):
    G = generator_matrix(build_instance(family, q))
    rng = random.Random(q)
    H = G
    for j in range(G.n):
        H = H.scale_column(j, rng.randrange(1, q))
    assert rank_dimension(H) == rank_dimension(G)
    assert min_distance(H) == min_distance(G)
    assert weight_distribution(H) == weight_distribution(G)


def test_parallel_matches_serial():
    G = generator_matrix(build_instance("deg5-2a1", 4))
    assert weight_distribution(G, jobs=3) == weight_distribution(G)
    assert min_distance(G, jobs=3) == min_distance(G)


def _row_space_equal(A: GeneratorMatrix, B: GeneratorMatrix) -> bool:
    F = A.field
    a = [[A.entry(i, j) for j in range(A.n)] for i in range(A.k)]
    b = [[B.entry(i, j) for j in range(B.n)] for i in range(B.k)]
    ra = field_rank(a, F)
    return ra == field_rank(b, F) == field_rank(a + b, F)


@pytest.mark.parametrize("q", [3, 4, 5])
def test_reed_muller_puncture(q):
    inst = build_instance("deg6-a1", q)
    G = generator_matrix(inst).delete(row=6, column=inst.n - 1)
    F = inst.field
    monos = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    pts = [(a, b) for a in F.elements() for b in F.elements()]
    rm = GeneratorMatrix.from_elements(F, [[a**i * b**j for a, b in pts] for i, j in monos])
    # same point set, evaluated in the plan's column order
    plan_pts = [(c.coords[0], c.coords[2]) for c in inst.plan[:-1]]
    assert sorted(p[0].code * q + p[1].code for p in plan_pts) == list(range(q * q))
    ordered = GeneratorMatrix.from_elements(F, [[a**i * b**j for a, b in plan_pts] for i, j in monos])
    assert _row_space_equal(G, ordered)
    assert rank_dimension(rm) == 6


def test_analyze_matrix_without_expectations():
    F = field_of_order(2)
    G = GeneratorMatrix(F, np.array([[1, 1, 1, 0], [0, 1, 1, 1]]))
    report = analyze_matrix(G)
    assert report.d_min == 2 and report.ok
    assert report.as_dict()["weight_distribution"] == [(0, 1), (2, 1), (3, 2)]
