from __future__ import annotations

import itertools
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from delpezzo_codes.families import FAMILIES
from delpezzo_codes.lattice import (
    EntryOverflow,
    GaloisAction,
    IntersectionForm,
    InvalidDescriptor,
    LatticeData,
    NotASubgroup,
    SublatticeBasis,
    DependentRows,
    class_group_report,
    determinant,
    embedding_invariants,
    fixed_sublattice,
    identity,
    mat_mul,
    orthogonal_complement,
    quotient_invariants,
    saturation,
    smith_normal_form,
    validate_lattice_data,
)

matrices = st.integers(1, 8).flatmap(
    lambda r: st.integers(1, 8).flatmap(
        lambda c: st.lists(st.lists(st.integers(-20, 20), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def _is_diagonal_chain(D):
    rows, cols = len(D), len(D[0])
    for i in range(rows):
        for j in range(cols):
            if i != j and D[i][j]:
                return False
    diag = [D[i][i] for i in range(min(rows, cols))]
    if any(d < 0 for d in diag):
        return False
    for a, b in zip(diag, diag[1:]):
        if a == 0 and b != 0:
            return False
        if a and b % a:
            return False
    return True


@given(matrices)
@settings(max_examples=1200, deadline=None)
def test_snf_round_trip(A):
    snf = smith_normal_form(A)
    assert mat_mul(mat_mul(snf.U, A), snf.V) == snf.D
    assert abs(determinant(snf.U)) == 1
    assert abs(determinant(snf.V)) == 1
    assert mat_mul(snf.V, snf.V_inv) == identity(len(snf.V))
    assert _is_diagonal_chain(snf.D)


def _determinantal_divisors(A):
    """d_k = gcd of all k x k minors, the classical oracle for invariant factors."""
    rows, cols = len(A), len(A[0])
    out = []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in itertools.combinations(range(rows), k):
            for cs in itertools.combinations(range(cols), k):
                g = gcd(g, determinant([[A[i][j] for j in cs] for i in rs]))
        out.append(g)
    return out


@given(
    st.integers(1, 4).flatmap(
        lambda r: st.integers(1, 4).flatmap(
            lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )
)
@settings(max_examples=300, deadline=None)
def test_snf_matches_minor_gcds(A):
    diag = smith_normal_form(A).diagonal
    divisors = _determinantal_divisors(A)
    prod = 1
    for d, dk in zip(diag, divisors):
        prod *= d
        assert prod == dk


def test_snf_examples():
    assert smith_normal_form(identity(4)).D == identity(4)
    assert smith_normal_form([[2, 4], [6, 8]]).diagonal == [2, 4]
    assert smith_normal_form([[1, -1, -1, -1]]).D == [[1, 0, 0, 0]]


def test_snf_overflow_guard():
    with pytest.raises(EntryOverflow):
        smith_normal_form([[2**41, 0], [0, 1]])


@given(st.lists(st.lists(st.integers(-6, 6), min_size=4, max_size=4), min_size=1, max_size=3))
@settings(max_examples=300, deadline=None)
def test_saturation_idempotent_and_extensive(rows):
    if smith_normal_form(rows).rank != len(rows):
        with pytest.raises(DependentRows):
            saturation(SublatticeBasis.of(4, rows))
        return
    S = SublatticeBasis.of(4, rows)
    H = saturation(S)
    assert H.rank == S.rank
    embedding_invariants(S, H)  # S is inside its hull
    assert saturation(H).same_span(H)
    assert all(d == 1 for d in smith_normal_form(H.rows()).diagonal)


def test_saturation_examples():
    assert saturation(SublatticeBasis.of(2, [[2, 0]])).same_span(SublatticeBasis.of(2, [[1, 0]]))
    # E - E' and 3(E0 - E) in the basis (E0, E, E')
    S = SublatticeBasis.of(3, [[0, 1, -1], [3, -3, 0]])
    assert saturation(S).same_span(SublatticeBasis.of(3, [[0, 1, -1], [1, -1, 0]]))
    T = SublatticeBasis.of(3, [[1, 2, 3], [0, 1, 4]])
    assert saturation(T).same_span(T)


def test_orthogonal_complement_examples():
    G = IntersectionForm(4)
    C = orthogonal_complement(SublatticeBasis.of(4, [[1, -1, -1, -1]]), G)
    assert C.rank == 3
    assert all(sum(r) == 0 for r in C.rows())
    assert orthogonal_complement(SublatticeBasis.of(4, []), G).same_span(SublatticeBasis.full(4))
    d5 = FAMILIES["deg4-d5"].lattice
    perp = orthogonal_complement(SublatticeBasis.of(6, d5.roots), d5.form)
    assert perp.same_span(SublatticeBasis.of(6, [d5.canonical]))


def test_fixed_sublattice_examples():
    assert fixed_sublattice(GaloisAction.from_cycles(4, [])).same_span(SublatticeBasis.full(4))
    fixed = fixed_sublattice(GaloisAction.from_cycles(4, [(1, 2, 3)]))
    assert fixed.same_span(SublatticeBasis.of(4, [[1, 0, 0, 0], [0, 1, 1, 1]]))
    fixed = fixed_sublattice(GaloisAction.from_cycles(7, [(1, 2, 3, 4, 5, 6)]))
    assert fixed.same_span(SublatticeBasis.of(7, [[1, 0, 0, 0, 0, 0, 0], [0, 1, 1, 1, 1, 1, 1]]))


def test_quotient_invariants_examples():
    free, torsion, _ = quotient_invariants(3, SublatticeBasis.of(3, [[3, 0, 0]]))
    assert (free, torsion) == (2, [3])
    # Cl(X) = Z E + Z F, R = Z 2(F - E)
    free, torsion, _ = quotient_invariants(2, SublatticeBasis.of(2, [[-2, 2]]))
    assert (free, torsion) == (1, [2])


def test_embedding_invariants():
    B = SublatticeBasis.of(3, [[1, 0, 0], [0, 1, 0]])
    assert embedding_invariants(B, B) == [1, 1]
    A = SublatticeBasis.of(3, [[2, 0, 0], [0, 6, 0]])
    assert embedding_invariants(A, B) == [2, 6]
    with pytest.raises(NotASubgroup):
        embedding_invariants(SublatticeBasis.of(3, [[0, 0, 1]]), B)


@pytest.mark.parametrize("family", list(FAMILIES))
def test_descriptor_self_intersections(family):
    data = FAMILIES[family].lattice
    G, K = data.form, data.canonical
    validate_lattice_data(data)
    for r in data.roots:
        assert G.dot(r, r) == -2 and G.dot(r, K) == 0
    for e in data.exceptional:
        assert G.dot(e, e) == -1 and G.dot(e, K) == -1
    sigma = data.galois
    assert sigma.preserves(G)
    assert all(sigma.apply(r) in [list(x) for x in data.roots] for r in data.roots)


@pytest.mark.parametrize("family", list(FAMILIES))
def test_bidual_and_root_intersection(family):
    data = FAMILIES[family].lattice
    G = data.form
    snf = smith_normal_form([list(r) for r in data.roots])
    R = SublatticeBasis.of(data.rank, snf.V_inv[: snf.rank])  # hull of the root span
    perp = orthogonal_complement(R, G)
    assert orthogonal_complement(perp, G).same_span(R)
    # R meets its orthogonal only in 0: the stacked rows stay independent
    stacked = R.rows() + perp.rows()
    assert smith_normal_form(stacked).rank == len(stacked)


def test_invalid_descriptor():
    bad = LatticeData(3, ((1, -1, 0),), (), ())
    with pytest.raises(InvalidDescriptor):
        validate_lattice_data(bad)


@pytest.mark.parametrize("family", list(FAMILIES))
def test_class_group_report_matches_table(family):
    desc = FAMILIES[family]
    report = class_group_report(desc.lattice)
    summary = report.summary()
    for key, val in desc.expected_report.items():
        assert summary[key] == val
    assert report.cartier_rank <= report.weil_free_rank
    f = report.embedding_factors
    assert all(b % a == 0 for a, b in zip(f, f[1:]))


def test_anticanonical_images():
    assert class_group_report(FAMILIES["deg6-a1"].lattice).anticanonical_image["free"] == [2]
    assert class_group_report(FAMILIES["deg4-d5"].lattice).anticanonical_image["free"] == [4]
