import json

import pytest
from hypothesis import given, settings, strategies as st

from semigroup_homology import semigroup as sg
from semigroup_homology.constructions import (
    cyclic_group,
    moore_semigroup,
    rectangular_band,
    suspension_monoid,
    trivial_monoid,
    wedge,
)
from semigroup_homology.corpus import semigroups_up_to

from oracles import all_ideals, associative

SEMILATTICE = [[0, 0], [0, 1]]
NULL2 = [[0, 0], [0, 0]]  # x*x = 0, zero = 0


@pytest.fixture(scope="module")
def corpus3():
    return semigroups_up_to(3)


@pytest.fixture(scope="module")
def moore2():
    return moore_semigroup(2)


def test_validate_trivial():
    S = sg.validate([[0]])
    assert S.order == 1 and S.identity == 0 and S.zero == 0


def test_validate_cyclic3():
    S = sg.validate([[(i + j) % 3 for j in range(3)] for i in range(3)])
    assert S.identity == 0 and S.zero is None


def test_validate_semilattice_against_triple_loop():
    assert associative(SEMILATTICE)
    S = sg.validate(SEMILATTICE)
    assert S.identity == 1 and S.zero == 0


def test_validate_rejects_nonassociative():
    # left-zero on a, but a*b=b breaks associativity somewhere
    table = [[1, 0], [0, 0]]
    assert not associative(table)
    with pytest.raises(sg.NonAssociative) as info:
        sg.validate(table)
    i, j, k = info.value.i, info.value.j, info.value.k
    assert table[table[i][j]][k] != table[i][table[j][k]]


@pytest.mark.parametrize("bad", [[[0, 1], [1]], [[0, 2], [1, 0]], [[0, -1], [1, 0]], [], [[0.5]]])
def test_validate_shape_errors(bad):
    with pytest.raises(sg.ShapeError):
        sg.validate(bad)


def test_adjoin_identity_examples(moore2):
    T = sg.adjoin_identity(trivial_monoid())
    assert T.order == 2 and T.identity == 1
    RB1 = sg.adjoin_identity(rectangular_band(2, 2))
    assert RB1.order == 5 and RB1.identity == 4
    S2, M2, _ = moore2
    assert S2.order == 12 and M2.order == 13
    # fresh identity even when the input is a monoid
    C2 = cyclic_group(2)
    C2e = sg.adjoin_identity(C2)
    assert C2e.order == 3 and C2e.identity == 2
    assert all(C2e.table[a][b] == C2.table[a][b] for a in range(2) for b in range(2))


def test_adjoin_zero_examples():
    assert sg.adjoin_zero(trivial_monoid()).zero == 1
    Z = sg.adjoin_zero(cyclic_group(2))
    assert Z.order == 3 and Z.zero == 2 and Z.identity == 0
    RBz = sg.adjoin_zero(rectangular_band(2, 2))
    assert RBz.order == 5
    assert sg.minimal_ideal(RBz).elements == (4,)
    # closure oracle: the ideal generated by the zero is just the zero
    assert sg.ideal_closure(RBz, [4]) == frozenset([4])


def test_direct_product():
    S = rectangular_band(2, 2)
    P = sg.direct_product(trivial_monoid(), S)
    assert P.table == S.table
    K = sg.direct_product(cyclic_group(2), cyclic_group(2))
    assert K.identity == 0
    assert all(K.table[a][a] == 0 for a in range(4))
    big = sg.direct_product(S, cyclic_group(3))
    assert big.order == 12 and associative(big.table)
    assert big.identity is None
    assert sg.direct_product(cyclic_group(2), cyclic_group(3)).identity is not None


def test_idempotents(moore2):
    for n in (1, 4, 7):
        C = cyclic_group(n)
        assert sg.idempotents(C) == {C.identity}
    B = rectangular_band(3, 2)
    assert sg.idempotents(B) == set(range(6))
    S2 = moore2[0]
    scan = {a for a in range(S2.order) if S2.table[a][a] == a}
    assert sg.idempotents(S2) == scan
    assert len(scan) == 10  # all of K_2 plus (0,s) and (0,t)


def test_minimal_ideal_examples(moore2):
    C = cyclic_group(5)
    assert sg.minimal_ideal(C).elements == tuple(range(5))
    for M in (cyclic_group(2), sg.adjoin_identity(rectangular_band(2, 2))):
        J = suspension_monoid(M)
        assert sg.minimal_ideal(J).elements == tuple(range(M.order, 3 * M.order))
    M2 = moore2[1]
    W = wedge(sg.adjoin_identity(rectangular_band(2, 2)), M2)
    K2 = sg.minimal_ideal(M2).elements
    expected = {W.embed_KN[(k, j)] for k in W.K for j in K2}
    assert set(sg.minimal_ideal(W.semigroup).elements) == expected
    assert len(expected) == 32


def test_minimal_ideal_inside_every_ideal(corpus3):
    for S in corpus3 + [sg.adjoin_identity(rectangular_band(2, 2)), suspension_monoid(cyclic_group(2))]:
        K = set(sg.minimal_ideal(S).elements)
        ideals = all_ideals(S.table)
        assert all(K <= I for I in ideals)
        assert frozenset(K) in ideals


def test_rectangular_band_checks(moore2):
    for a in range(1, 4):
        for b in range(1, 4):
            assert sg.is_rectangular_band(rectangular_band(a, b))
    assert not sg.is_rectangular_band(cyclic_group(2))
    M2 = moore2[1]
    assert sg.is_rectangular_band(M2, sg.minimal_ideal(M2))


def test_regular():
    assert sg.is_regular(rectangular_band(2, 3))
    assert sg.is_regular(cyclic_group(6))
    # null semigroup on two elements: s = 1 has no t with 1*t*1 = 1
    N = sg.validate(NULL2)
    assert not any(N.product(1, t, 1) == 1 for t in range(2))
    assert not sg.is_regular(N)


def test_regular_equivalence_on_corpus(corpus3):
    for S in corpus3:
        assert sg.is_regular(S) == sg.is_regular_via_idempotents(S)


def test_aperiodic(moore2):
    assert sg.is_aperiodic(rectangular_band(2, 2))
    assert not sg.is_aperiodic(cyclic_group(3))
    for n in (2, 3):
        M = moore_semigroup(n)[1]
        assert not sg.is_aperiodic(M)
        assert not sg.is_aperiodic_by_powers(M)


def test_aperiodic_equivalence_on_corpus(corpus3):
    for S in corpus3:
        assert sg.is_aperiodic(S) == sg.is_aperiodic_by_powers(S)


def test_maximal_subgroup():
    C = cyclic_group(4)
    G = sg.maximal_subgroup(C, 0)
    assert G.order == 4
    for e in range(4):
        assert sg.maximal_subgroup(rectangular_band(2, 2), e).order == 1
    with pytest.raises(sg.NotIdempotent):
        sg.maximal_subgroup(C, 1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_maximal_subgroup_of_moore_monoid_is_cyclic(n):
    _, M, L = moore_semigroup(n)
    e = L.t(0, "t")
    G = sg.maximal_subgroup(M, e)
    # unit-group scan of eSe, directly
    local = {M.product(e, s, e) for s in range(M.order)}
    units = {g for g in local if any(M.product(g, h) == e == M.product(h, g) for h in local)}
    assert set(G.elements) == units == {L.t(k, "t") for k in range(n)}
    # (1,t) generates: its powers run through the whole group before returning to e
    gen = G.elements.index(L.t(1, "t"))
    unit = G.elements.index(e)
    x, steps = gen, 1
    while x != unit:
        x = G.table[x][gen]
        steps += 1
    assert steps == G.order == n


def test_same_j_class_idempotents_have_equal_group_orders(corpus3, moore2):
    for S in corpus3 + [moore2[1]]:
        for cls in sg.j_classes(S):
            orders = {sg.maximal_subgroup(S, e).order for e in cls if S.table[e][e] == e}
            assert len(orders) <= 1


def test_principal_series_examples(moore2):
    assert len(sg.principal_series(rectangular_band(2, 2))) == 1
    RB1 = sg.adjoin_identity(rectangular_band(2, 2))
    ps = sg.principal_series(RB1)
    assert [len(I) for I in ps.ideals] == [5, 4] and ps.certified
    M2 = moore2[1]
    ps = sg.principal_series(M2)
    assert ps.certified
    assert [I.elements for I in ps.ideals] == [tuple(range(13)), tuple(range(12)), tuple(range(8))]


def _is_unrefinable_by_enumeration(S, chain):
    ideals = all_ideals(S.table)
    for big, small in zip(chain, chain[1:]):
        b, s = set(big.elements), set(small.elements)
        if any(s < I < b for I in ideals):
            return False
    return True


def test_principal_series_unrefinable_by_exhaustive_ideals(corpus3, moore2):
    for S in corpus3 + [moore2[1], suspension_monoid(cyclic_group(2))]:
        ps = sg.principal_series(S)
        assert ps.ideals[0].elements == tuple(range(S.order))
        assert ps.ideals[-1].elements == sg.minimal_ideal(S).elements
        assert all(sg.is_ideal(S, I.elements) for I in ps.ideals)
        assert _is_unrefinable_by_enumeration(S, ps.ideals)
        assert ps.certified


def test_principal_series_uncertified_above_limit():
    S = sg.adjoin_identity(rectangular_band(5, 6))
    assert not sg.principal_series(S).certified
    assert sg.principal_series(S, certify_limit=100).certified


def test_rees_quotient(moore2):
    S = rectangular_band(2, 2)
    whole = sg.IdealData(tuple(range(4)))
    Q = sg.rees_quotient(S, whole)
    assert Q.order == 1 and Q.zero == 0
    RB1 = sg.adjoin_identity(S)
    Q = sg.rees_quotient(RB1, sg.minimal_ideal(RB1))
    assert Q.order == 2 and Q.zero is not None and Q.identity is not None
    M2 = moore2[1]
    assert sg.rees_quotient(M2, sg.minimal_ideal(M2)).order == 13 - 8 + 1
    with pytest.raises(sg.NotAnIdeal):
        sg.rees_quotient(M2, sg.IdealData((0,)))


def test_rees_quotient_by_minimal_ideal_has_zero(corpus3):
    for S in corpus3:
        assert sg.rees_quotient(S, sg.minimal_ideal(S)).zero is not None


def test_table_text_round_trip(moore2):
    M2 = moore2[1]
    text = sg.dumps_table(M2)
    assert text.splitlines()[0] == "13"
    again = sg.loads_table(text)
    assert again.table == M2.table and again.names == M2.names
    assert sg.dumps_table(again) == text


def test_table_json_round_trip(tmp_path):
    S = rectangular_band(2, 3)
    doc = sg.to_json(S)
    assert set(doc) == {"order", "table", "names"}
    assert sg.from_json(json.dumps(doc)).table == S.table
    p = tmp_path / "rb.json"
    p.write_text(json.dumps(doc))
    assert sg.load(str(p)).table == S.table
    p = tmp_path / "rb.txt"
    p.write_text("2\n0 0\n0 1\n")
    assert sg.load(str(p)).identity == 1


@pytest.mark.parametrize("text", ["", "2\n0 0\n", "x\n", "2 3\n0 0\n0 0\n", "2\n1 0\n0 0\n"])
def test_table_text_errors(text):
    with pytest.raises(sg.SemigroupError):
        sg.loads_table(text)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_relabel_preserves_structure(data):
    S = data.draw(st.sampled_from([
        sg.adjoin_identity(rectangular_band(2, 2)),
        moore_semigroup(2)[1],
        suspension_monoid(cyclic_group(2)),
        sg.validate(NULL2),
    ]))
    perm = data.draw(st.permutations(range(S.order)))
    T = sg.relabel(S, perm)
    assert len(sg.idempotents(T)) == len(sg.idempotents(S))
    assert len(sg.minimal_ideal(T)) == len(sg.minimal_ideal(S))
    assert sg.is_regular(T) == sg.is_regular(S)
    assert len(sg.principal_series(T)) == len(sg.principal_series(S))
