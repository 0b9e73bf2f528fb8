"""Exhaustive small corpora: all labelled semigroups of order <= 3 and all
monoids of order <= 4 up to isomorphism."""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product

import numpy as np

from .semigroup import FiniteSemigroup, all_tables, validate


def semigroups_up_to(n: int) -> list:
    """Every associative table on ``1..n`` elements (labelled, brute force)."""
    if n > 3:
        raise ValueError("labelled brute force is only feasible up to order 3")
    return [S for k in range(1, n + 1) for S in all_tables(k)]


def _associative_mask(tables: np.ndarray) -> np.ndarray:
    n = tables.shape[1]
    ok = np.ones(len(tables), dtype=bool)
    rows = np.arange(len(tables))[:, None]
    for i in range(n):
        for j in range(n):
            ij = tables[:, i, j]
            # (ij)k vs i(jk) for all k at once
            left = tables[rows, ij[:, None], np.arange(n)[None, :]]
            right = tables[rows, i, tables[:, j, :]]
            ok &= (left == right).all(axis=1)
    return ok


@lru_cache(maxsize=None)
def _monoid_tables(n: int) -> tuple:
    if n == 1:
        return (((0,),),)
    k = n - 1
    free = np.array(list(product(range(n), repeat=k * k)), dtype=np.int8).reshape(-1, k, k)
    tables = np.empty((len(free), n, n), dtype=np.int8)
    tables[:, 0, :] = np.arange(n)
    tables[:, :, 0] = np.arange(n)
    tables[:, 1:, 1:] = free
    good = tables[_associative_mask(tables)]
    seen = set()
    out = []
    perms = [(0,) + p for p in permutations(range(1, n))]
    for T in good:
        T = T.tolist()
        canon = min(
            tuple(tuple(p[T[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
            for p in perms
            for inv in [_inverse(p)]
        )
        if canon not in seen:
            seen.add(canon)
            out.append(canon)
    return tuple(sorted(out))


def _inverse(p):
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return inv


def monoids_up_to_iso(n: int) -> list:
    """Monoids of order exactly ``n`` up to isomorphism, identity at index 0."""
    return [validate(T) for T in _monoid_tables(n)]


def small_monoids(max_order: int = 4) -> list:
    return [M for n in range(1, max_order + 1) for M in monoids_up_to_iso(n)]
