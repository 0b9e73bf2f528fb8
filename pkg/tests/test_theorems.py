import json

import pytest

from semigroup_homology import semigroup as sg
from semigroup_homology.constructions import (
    cyclic_group,
    moore_semigroup,
    rectangular_band,
    trivial_monoid,
    wedge_monoid,
)
from semigroup_homology.corpus import small_monoids
from semigroup_homology.homology import ChainComplex, HomologyGroup, Z, ZERO, cyclic, homology, homology_profile
from semigroup_homology.snf import SparseMatrix
from semigroup_homology.theorems import (
    MAPS,
    CheckReport,
    ExactnessFailure,
    NotRegular,
    build_resolution,
    check_moore,
    check_regular_vanishing,
    check_suspension_shift,
    check_wedge_additivity,
    homology_from_resolution,
    displayed_matrices,
    tensored_complex,
    verify_exactness,
)

from oracles import matmul, rational_rank

RB1 = sg.adjoin_identity(rectangular_band(2, 2))


@pytest.mark.parametrize("n", range(2, 7))
def test_resolution_is_exact(n):
    R = build_resolution(n)
    rep = verify_exactness(R)
    assert rep.ok and {c[0] for c in rep.checks} == set("abcde")


@pytest.mark.parametrize("n", [2, 3, 4])
def test_augmented_resolution_is_acyclic(n):
    # independent route: the whole augmented sequence has zero homology
    R = build_resolution(n)
    dims = R.dims()
    maps = [R.maps[m] for m in MAPS]
    C = ChainComplex(dims + [0], maps + [SparseMatrix.zeros(dims[4], 0)])
    C.check()
    for q in range(4):
        assert homology(C, q) == ZERO
    dense = [m.to_dense() for m in maps]
    for f, g in zip(dense, dense[1:]):
        assert not any(any(row) for row in matmul(f, g))
    assert [rational_rank(f) for f in dense] == [1, dims[1] - 1, dims[3] - dims[4], dims[4]]


def test_dims_n2():
    assert build_resolution(2).dims() == [1, 4, 13, 18, 8]


@pytest.mark.parametrize("n", [2, 3, 5])
def test_resolution_bases(n):
    R = build_resolution(n)
    L = R.layout
    assert set(R.bases["ZM(x,0)"]) == {L.k(w, 0) for w in L.k_rows}
    assert set(R.bases["ZM(0,t)+ZK"]) == {("P", m) for m in list(range(L.k_size)) + [L.t(k, "t") for k in range(n)]} | {("K", k) for k in range(L.k_size)}


def test_phi_kills_k():
    R = build_resolution(3)
    phi = R.maps["phi"]
    for k in range(R.layout.k_size):
        assert not phi.cols[k]


def test_xi_wraps_around():
    n = 4
    R = build_resolution(n)
    L = R.layout
    mid = {b: i for i, b in enumerate(R.bases["ZM(0,t)+ZK"])}
    src = R.bases["ZK"].index(L.k(2, n - 1))
    col = R.maps["xi"].cols[src]
    assert col[mid[("K", L.k(2, 0))]] == 1
    assert col[mid[("K", L.k(2, n - 1))]] == -1


def test_mutated_psi_fails():
    R = build_resolution(2)
    dense = R.maps["psi"].to_dense()
    dense[0][0] += 1
    bad = R.with_map("psi", SparseMatrix.from_dense(dense))
    rep = verify_exactness(bad, raise_on_failure=False)
    assert not rep.ok
    assert rep.failures()[0][:2] == ("a", "psi*xi")
    with pytest.raises(ExactnessFailure):
        verify_exactness(bad)


@pytest.mark.parametrize("n", range(2, 7))
def test_tensored_matrices_match_display(n):
    T = tensored_complex(n)
    A, B = displayed_matrices(n)
    assert T.A == A and T.B == B
    assert [sum(row) for row in zip(*B)] == [n] + [0] * n
    assert rational_rank(B) == n


def test_display_b_n3_by_hand():
    A, B = displayed_matrices(3)
    assert A == [[0], [1], [1], [1]]
    assert B == [[1, -1, 1, 0], [1, 0, -1, 1], [1, 1, 0, -1]]


@pytest.mark.parametrize("n", range(2, 7))
def test_homology_from_resolution(n):
    assert homology_from_resolution(n) == [Z, ZERO, cyclic(n), ZERO]


def test_resolution_agrees_with_bar_complex():
    assert homology_profile(moore_semigroup(2)[1], 4) == homology_from_resolution(2)
    assert homology_profile(moore_semigroup(3)[1], 3) == homology_from_resolution(3)[:3]


@pytest.mark.parametrize("n", range(2, 7))
def test_check_moore(n):
    rep = check_moore(n)
    assert rep.verdict and rep.computed["homology"] == ["Z", "0", f"Z/{n}", "0"]


def test_report_json_round_trip():
    rep = check_moore(2)
    again = CheckReport.from_dict(json.loads(rep.to_json()))
    assert again.to_json() == rep.to_json()


@pytest.mark.parametrize("S", [trivial_monoid(), cyclic_group(2), RB1], ids=["trivial", "C2", "RB1"])
def test_suspension_shift(S):
    rep = check_suspension_shift(S, 4)
    assert rep.verdict, rep.to_dict()


def test_suspension_shift_small_monoids():
    for M in small_monoids(4):
        assert check_suspension_shift(M, 4).verdict


def test_wedge_additivity():
    rep = check_wedge_additivity(RB1, RB1, 3)
    assert rep.verdict
    assert rep.computed["reduced_homology"] == ["0", "0", "Z^2"]
    assert rep.computed["minimal_ideal_size"] == 16


def test_wedge_with_trivial_is_the_factor():
    rep = check_wedge_additivity(RB1, trivial_monoid(), 4)
    assert rep.verdict and rep.computed["reduced_homology"] == ["0", "0", "Z", "0"]


def test_wedge_with_cyclic_moore():
    rep = check_wedge_additivity(RB1, moore_semigroup(2)[1], 3)
    assert rep.verdict and rep.computed["reduced_homology"][2] == "Z + Z/2"


@pytest.mark.slow
def test_three_fold_wedge():
    W = wedge_monoid(RB1, RB1)
    assert homology_profile(wedge_monoid(W, RB1), 3)[2] == HomologyGroup(3)


def test_regular_vanishing():
    rep = check_regular_vanishing(RB1, 5, 5)
    assert rep.verdict
    assert rep.parameters["bound"] == 4 and rep.parameters["beyond_bound"]
    rep = check_regular_vanishing(moore_semigroup(2)[1], 1, 3)
    assert rep.verdict and not rep.parameters["aperiodic"]


def test_semilattice_with_identity_is_acyclic():
    L1 = sg.adjoin_identity(sg.validate([[0, 0], [0, 1]]))
    rep = check_regular_vanishing(L1, 1, 4)
    assert rep.parameters["aperiodic"] and rep.verdict
    assert rep.computed == ["0"] * 4


def test_not_regular():
    # the null semigroup with an identity adjoined is not regular
    N = sg.adjoin_identity(sg.validate([[0, 0], [0, 0]]))
    with pytest.raises(NotRegular):
        check_regular_vanishing(N, 1, 2)
