"""Group completion of a finite semigroup by coset enumeration.

The multiplication table of ``S`` read as a group presentation (one
generator per element, one relator ``x_s x_t x_st^-1`` per pair) presents
``G(S)``, which is a quotient of ``S`` and therefore finite.  Since
``pi_1(BS) = G(S)`` this decides simple connectivity.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import List, Optional

from .homology import HomologyGroup
from .semigroup import FiniteSemigroup
from .snf import SparseMatrix, smith_normal_form


class CosetCapExceeded(RuntimeError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"coset enumeration exceeded {cap} live cosets; raise the cap")


@dataclass(frozen=True)
class GroupPresentation:
    """Relators are words of ``(generator, exponent)`` pairs with exponent +-1."""
    generator_count: int
    relators: tuple

    def relation_count(self) -> int:
        return len(self.relators)


@dataclass(frozen=True)
class FiniteGroupTable:
    order: int
    table: tuple
    generator_images: tuple

    @property
    def identity(self) -> int:
        return 0

    def inverse(self, g: int) -> int:
        return self.table[g].index(0)


def presentation(S: FiniteSemigroup) -> GroupPresentation:
    rels = []
    if S.identity is not None:
        rels.append(((S.identity, 1),))
    for s in range(S.order):
        for t in range(S.order):
            rels.append(((s, 1), (t, 1), (S.table[s][t], -1)))
    return GroupPresentation(S.order, tuple(rels))


class _CosetTable:
    def __init__(self, ncols: int, cap: int):
        self.ncols = ncols
        self.cap = cap
        self.table: List[list] = [[None] * ncols]
        self.parent = [0]
        self.live = 1

    @staticmethod
    def inv(x: int) -> int:
        return x ^ 1

    def rep(self, c: int) -> int:
        p = self.parent
        root = c
        while p[root] != root:
            root = p[root]
        while p[c] != root:
            p[c], c = root, p[c]
        return root

    def define(self, c: int, x: int) -> int:
        if self.live >= self.cap:
            raise CosetCapExceeded(self.cap)
        d = len(self.table)
        self.table.append([None] * self.ncols)
        self.parent.append(d)
        self.live += 1
        self.table[c][x] = d
        self.table[d][self.inv(x)] = c
        return d

    def coincidence(self, a: int, b: int) -> None:
        queue = []
        self._merge(a, b, queue)
        i = 0
        T = self.table
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(self.ncols):
                f = T[e][x]
                if f is None:
                    continue
                ix = self.inv(x)
                if T[f][ix] == e:
                    T[f][ix] = None
                e1, f1 = self.rep(e), self.rep(f)
                if T[e1][x] is not None:
                    self._merge(f1, T[e1][x], queue)
                elif T[f1][ix] is not None:
                    self._merge(e1, T[f1][ix], queue)
                else:
                    T[e1][x] = f1
                    T[f1][ix] = e1

    def _merge(self, k: int, l: int, queue: list) -> None:
        k, l = self.rep(k), self.rep(l)
        if k == l:
            return
        if l < k:
            k, l = l, k
        self.parent[l] = k
        self.live -= 1
        queue.append(l)

    def scan_and_fill(self, c: int, word: list) -> None:
        T = self.table
        f = b = c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and T[f][word[i]] is not None:
                f = T[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and T[b][self.inv(word[j])] is not None:
                b = T[b][self.inv(word[j])]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                T[f][word[i]] = b
                T[b][self.inv(word[i])] = f
                return
            self.define(f, word[i])


def todd_coxeter(P: GroupPresentation, max_cosets: int) -> FiniteGroupTable:
    """Enumerate the cosets of the trivial subgroup (HLT strategy)."""
    ncols = 2 * P.generator_count
    words = [[2 * g + (0 if e > 0 else 1) for g, e in rel] for rel in P.relators]
    ct = _CosetTable(ncols, max(max_cosets, 1))
    c = 0
    while c < len(ct.table):
        if ct.parent[c] == c:
            for w in words:
                if ct.parent[c] != c:
                    break
                ct.scan_and_fill(c, w)
            if ct.parent[c] == c:
                for x in range(ncols):
                    if ct.table[c][x] is None:
                        ct.define(c, x)
        c += 1
    live = [k for k in range(len(ct.table)) if ct.parent[k] == k]
    number = {k: i for i, k in enumerate(live)}
    act = [[number[ct.rep(ct.table[k][x])] for x in range(ncols)] for k in live]
    return _group_from_cosets(act, P.generator_count)


def _group_from_cosets(act, ngens: int) -> FiniteGroupTable:
    n = len(act)
    # words from coset 0 along a BFS tree
    word: list = [None] * n
    word[0] = []
    todo = deque([0])
    while todo:
        c = todo.popleft()
        for x in range(len(act[c])):
            d = act[c][x]
            if word[d] is None:
                word[d] = word[c] + [x]
                todo.append(d)
    table = []
    for a in range(n):
        row = []
        for b in range(n):
            c = a
            for x in word[b]:
                c = act[c][x]
            row.append(c)
        table.append(tuple(row))
    images = tuple(act[0][2 * g] for g in range(ngens))
    return FiniteGroupTable(n, tuple(table), images)


def group_completion(S: FiniteSemigroup, max_cosets: Optional[int] = None) -> FiniteGroupTable:
    cap = 4 * S.order if max_cosets is None else max_cosets
    return todd_coxeter(presentation(S), cap)


def is_simply_connected(S: FiniteSemigroup, max_cosets: Optional[int] = None) -> bool:
    return group_completion(S, max_cosets).order == 1


def abelianization(G: FiniteGroupTable) -> HomologyGroup:
    """``G / [G, G]`` from the relations ``e_g + e_h - e_gh`` on ``Z^|G|``."""
    n = G.order
    rows = [(0, 0, 1)]
    r = 1
    for g in range(n):
        for h in range(n):
            gh = G.table[g][h]
            rows.append((r, g, 1))
            rows.append((r, h, 1))
            rows.append((r, gh, -1))
            r += 1
    R = SparseMatrix.from_triples(r, n, rows)
    res = smith_normal_form(R)
    return HomologyGroup(n - res.rank, tuple(res.torsion))
