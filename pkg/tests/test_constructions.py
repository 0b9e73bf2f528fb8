import pytest

from semigroup_homology import semigroup as sg
from semigroup_homology.constructions import (
    MinimalIdealNotRectangular,
    MooreSemigroupLayout,
    cyclic_group,
    moore_semigroup,
    rectangular_band,
    suspension_monoid,
    trivial_monoid,
    wedge,
    wedge_monoid,
)
from semigroup_homology.corpus import monoids_up_to_iso

from oracles import associative

RB1 = sg.adjoin_identity(rectangular_band(2, 2))


def element_orders(G):
    out = []
    for g in range(G.order):
        k, x = 1, g
        while x != G.identity:
            x = G.table[x][g]
            k += 1
        out.append(k)
    return sorted(out)


def test_rectangular_band():
    assert rectangular_band(1, 1).table == ((0,),)
    B = rectangular_band(2, 2)
    assert sg.idempotents(B) == set(range(4))
    # (p,q)(p',q') = (p,q')
    assert B.table[1][2] == 0 * 2 + 0 and B.table[2][1] == 1 * 2 + 1
    T = rectangular_band(3, 2).table
    assert all(T[T[x][y]][x] == x for x in range(6) for y in range(6))
    with pytest.raises(ValueError):
        rectangular_band(0, 2)


def test_cyclic_group():
    assert cyclic_group(1).table == ((0,),)
    assert cyclic_group(2).table == ((0, 1), (1, 0))
    C6 = cyclic_group(6)
    C2xC3 = sg.direct_product(cyclic_group(2), cyclic_group(3))
    assert element_orders(C6) == element_orders(C2xC3) == [1, 2, 3, 3, 6, 6]


def test_suspension_small():
    J = suspension_monoid(trivial_monoid())
    assert J.order == 3
    K = sg.minimal_ideal(J)
    assert K.elements == (1, 2) and sg.is_rectangular_band(J, K)
    J2 = suspension_monoid(cyclic_group(2))
    assert J2.order == 6 and len(sg.minimal_ideal(J2)) == 4


def test_suspension_product_rules():
    S = cyclic_group(3)
    J = suspension_monoid(S)
    m = 3
    for s in range(m):
        for s2 in range(m):
            for i in (1, 2):
                assert J.table[s][i * m + s2] == i * m + s2           # s(i,s') = (i,s')
                assert J.table[i * m + s2][s] == i * m + S.table[s2][s]  # (i,s')s = (i,s's)
                for j in (1, 2):
                    assert J.table[i * m + s][j * m + s2] == i * m + s2


@pytest.mark.parametrize("M", [M for n in (1, 2, 3) for M in monoids_up_to_iso(n)]
                         + [cyclic_group(4), RB1], ids=str)
def test_suspension_associative_and_minimal_ideal(M):
    J = suspension_monoid(M)
    assert associative(J.table)
    K = sg.minimal_ideal(J)
    assert K.elements == tuple(range(M.order, 3 * M.order))
    assert sg.is_rectangular_band(J, K)


def test_suspension_of_moore_monoid_is_associative():
    M2 = moore_semigroup(2)[1]
    J = suspension_monoid(M2)
    assert associative(J.table)


def test_suspension_requires_monoid():
    with pytest.raises(sg.NotAMonoid):
        suspension_monoid(rectangular_band(2, 2))


def test_wedge_with_trivial_collapses():
    W = wedge_monoid(RB1, trivial_monoid())
    assert W.order == 5 and W.table == RB1.table


def test_wedge_sizes_and_minimal_ideal():
    W = wedge(RB1, RB1)
    assert W.semigroup.order == 5 + 4 * 4 == 21
    M2 = moore_semigroup(2)[1]
    W2 = wedge(RB1, M2)
    assert W2.semigroup.order == 5 + 4 * 12
    J = sg.minimal_ideal(M2).elements
    KxJ = {W2.embed_KN[(k, j)] for k in W2.K for j in J}
    assert set(sg.minimal_ideal(W2.semigroup).elements) == KxJ
    assert len(KxJ) == 32


def test_wedge_is_submonoid_of_product():
    W = wedge(RB1, moore_semigroup(2)[1])
    S = W.semigroup
    for a, (m1, n1) in enumerate(W.pairs):
        for b, (m2, n2) in enumerate(W.pairs):
            assert W.pairs[S.table[a][b]] == (W.M.table[m1][m2], W.N.table[n1][n2])
    assert S.identity == W.embed_M[W.M.identity]
    for k in W.K:
        assert W.embed_KN[(k, W.N.identity)] == W.embed_M[k]


def test_wedge_iterates():
    W = wedge_monoid(RB1, RB1)
    WW = wedge_monoid(W, RB1)
    assert WW.order == 21 + 16 * 4
    K = sg.minimal_ideal(WW)
    assert len(K) == 64 and sg.is_rectangular_band(WW, K)


def test_wedge_errors():
    with pytest.raises(MinimalIdealNotRectangular):
        wedge_monoid(cyclic_group(2), RB1)
    with pytest.raises(sg.NotAMonoid):
        wedge_monoid(rectangular_band(2, 2), RB1)


def test_moore_layout():
    L = MooreSemigroupLayout(3)
    assert L.k_size == 15 and L.t_size == 6
    assert list(L.k_block.values()) == list(range(15))
    assert list(L.t_block.values()) == list(range(15, 21))
    assert L.k("x", 0) == 0 and L.k("y", 2) == 5 and L.k(0, 0) == 6
    assert L.t(0, "s") == 15 and L.t(0, "t") == 16 and L.t(1, "s") == 17
    for a in range(21):
        c = L.coords(a)
        assert (L.k(c[1], c[2]) if c[0] == "K" else L.t(c[1], c[2])) == a


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_moore_sizes(n):
    S, M, L = moore_semigroup(n)
    assert S.order == n * (n + 2) + 2 * n
    assert M.order == S.order + 1 and M.identity == S.order
    assert sg.minimal_ideal(M).elements == tuple(range(L.k_size))


def test_moore_sample_products_n3():
    S, _, L = moore_semigroup(3)
    T = S.table
    assert T[L.t(1, "s")][L.k("y", 0)] == L.k(0, 0)
    assert T[L.t(1, "t")][L.k("y", 0)] == L.k(1, 0)
    for i in L.k_rows:
        for j in range(3):
            assert T[L.k(i, j)][L.t(2, "t")] == L.k(i, (2 + j) % 3)


def test_moore_all_seven_rules_n4():
    n = 4
    S, _, L = moore_semigroup(n)
    T = S.table
    for i in L.k_rows:
        for j in range(n):
            for k in L.k_rows:
                for l in range(n):
                    assert T[L.k(i, j)][L.k(k, l)] == L.k(i, l)
    for k in range(n):
        for z in "st":
            for l in range(n):
                for w in "st":
                    assert T[L.t(k, z)][L.t(l, w)] == L.t(k + l, w)
            for i in range(n):
                assert T[L.k("x", i)][L.t(k, z)] == L.k("x", k + i)
                assert T[L.t(k, z)][L.k("x", i)] == L.k("x", i)
                for l in range(n):
                    assert T[L.t(k, z)][L.k(l, i)] == L.k(k + l, i)
                assert T[L.t(k, z)][L.k("y", i)] == L.k(k - 1 if z == "s" else k, i)


def test_moore_associative_brute_force():
    S, _, _ = moore_semigroup(4)
    assert S.order == 4 * 6 + 2 * 4  # |K_4| + |T_4|; 32**3 triples
    assert associative(S.table)


@pytest.mark.parametrize("n", [2, 3])
def test_moore_block_invariants(n):
    S, _, L = moore_semigroup(n)
    K = set(range(L.k_size))
    Tn = set(range(L.k_size, S.order))
    assert all(S.table[k][k] == k for k in K)
    assert all(S.table[a][b] in Tn for a in Tn for b in Tn)
    assert sg.is_ideal(S, K)
