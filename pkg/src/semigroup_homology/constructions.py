"""Explicit semigroups: rectangular bands, cyclic groups, the Moore
semigroups ``S_n``/``M_n``, suspension monoids ``J(S)`` and wedge monoids."""
from __future__ import annotations

from dataclasses import dataclass

from .semigroup import (
    FiniteSemigroup,
    NotAMonoid,
    SemigroupError,
    adjoin_identity,
    direct_product,
    is_rectangular_band,
    minimal_ideal,
    validate,
)


class MinimalIdealNotRectangular(SemigroupError):
    pass


def trivial_monoid() -> FiniteSemigroup:
    return validate([[0]], ["1"])


def rectangular_band(a: int, b: int) -> FiniteSemigroup:
    """``A x B`` with ``(p, q)(p', q') = (p, q')``; ``(p, q)`` has index ``p*b + q``."""
    if a < 1 or b < 1:
        raise ValueError("rectangular band dimensions must be >= 1")
    N = a * b
    rows = [[(x // b) * b + (y % b) for y in range(N)] for x in range(N)]
    names = [f"({p},{q})" for p in range(a) for q in range(b)]
    return validate(rows, names)


def cyclic_group(n: int) -> FiniteSemigroup:
    if n < 1:
        raise ValueError("cyclic group order must be >= 1")
    rows = [[(i + j) % n for j in range(n)] for i in range(n)]
    return validate(rows, [str(i) for i in range(n)])


def suspension_monoid(S: FiniteSemigroup) -> FiniteSemigroup:
    """``J(S) = S u ({1,2} x S)`` for a monoid ``S``.

    ``S`` keeps indices ``0..m-1``; ``(i, s)`` sits at ``i*m + s`` for
    ``i`` in {1, 2}.  Products: ``K`` is the rectangular band
    ``(i,s)(j,s') = (i,s')``, ``s (i,s') = (i,s')`` and ``(i,s') s = (i, s's)``.
    """
    if S.identity is None:
        raise NotAMonoid("J(S) needs a monoid")
    m = S.order
    t = S.table
    N = 3 * m

    def split(a):
        return divmod(a, m)  # (layer, element), layer 0 is S itself

    rows = [[0] * N for _ in range(N)]
    for a in range(N):
        la, sa = split(a)
        for b in range(N):
            lb, sb = split(b)
            if la == 0 and lb == 0:
                rows[a][b] = t[sa][sb]
            elif la == 0:
                rows[a][b] = b
            elif lb == 0:
                rows[a][b] = la * m + t[sa][sb]
            else:
                rows[a][b] = la * m + sb
    names = [S.name(s) for s in range(m)]
    names += [f"({i},{S.name(s)})" for i in (1, 2) for s in range(m)]
    return validate(rows, names)


@dataclass(frozen=True)
class WedgeMonoid:
    """The submonoid ``(M x {1}) u (K x N)`` of ``M x N`` with its embeddings.

    ``embed_M[m]`` is the index of ``(m, 1)``; ``embed_KN[(k, n)]`` is the
    index of ``(k, n)`` for ``k`` in the minimal ideal of ``M``.
    """
    semigroup: FiniteSemigroup
    M: FiniteSemigroup
    N: FiniteSemigroup
    K: tuple
    embed_M: tuple
    embed_KN: dict
    pairs: tuple  # index -> (m, n) in M x N


def wedge(M: FiniteSemigroup, N: FiniteSemigroup) -> WedgeMonoid:
    if M.identity is None or N.identity is None:
        raise NotAMonoid("wedge needs two monoids")
    K_ideal = minimal_ideal(M)
    if not is_rectangular_band(M, K_ideal):
        raise MinimalIdealNotRectangular("minimal ideal of the first factor is not a rectangular band")
    K = K_ideal.elements
    one = N.identity
    pairs = [(m, one) for m in range(M.order)]
    pairs += [(k, n) for k in K for n in range(N.order) if n != one]
    index = {p: i for i, p in enumerate(pairs)}
    rows = []
    for (m1, n1) in pairs:
        row = []
        for (m2, n2) in pairs:
            p = (M.table[m1][m2], N.table[n1][n2])
            if p not in index:
                raise SemigroupError(f"product {p} left the wedge monoid")
            row.append(index[p])
        rows.append(row)
    names = [M.name(m) if n == one else f"({M.name(m)},{N.name(n)})" for m, n in pairs]
    S = validate(rows, names)
    embed_KN = {(k, n): index[(k, n)] for k in K for n in range(N.order)}
    return WedgeMonoid(S, M, N, K, tuple(range(M.order)), embed_KN, tuple(pairs))


def wedge_monoid(M: FiniteSemigroup, N: FiniteSemigroup) -> FiniteSemigroup:
    return wedge(M, N).semigroup


@dataclass(frozen=True)
class MooreSemigroupLayout:
    """Index bookkeeping for ``S_n = K_n u T_n``.

    ``K_n`` rows are ordered ``x, y, 0, ..., n-1`` and stored row-major
    first; ``T_n`` follows as ``(0,s), (0,t), (1,s), ...``.  In ``M_n`` the
    identity is appended last.
    """
    n: int

    @property
    def k_rows(self) -> tuple:
        return ("x", "y") + tuple(range(self.n))

    @property
    def k_size(self) -> int:
        return (self.n + 2) * self.n

    @property
    def t_size(self) -> int:
        return 2 * self.n

    @property
    def identity(self) -> int:
        return self.k_size + self.t_size

    def k(self, i, j: int) -> int:
        if i == "x":
            r = 0
        elif i == "y":
            r = 1
        else:
            r = 2 + (i % self.n)
        return r * self.n + (j % self.n)

    def t(self, k: int, z: str) -> int:
        return self.k_size + 2 * (k % self.n) + (0 if z == "s" else 1)

    @property
    def k_block(self) -> dict:
        return {(i, j): self.k(i, j) for i in self.k_rows for j in range(self.n)}

    @property
    def t_block(self) -> dict:
        return {(k, z): self.t(k, z) for k in range(self.n) for z in "st"}

    def coords(self, a: int):
        """``('K', i, j)``, ``('T', k, z)`` or ``('1',)`` for an index."""
        if a < self.k_size:
            r, j = divmod(a, self.n)
            return ("K", self.k_rows[r], j)
        if a < self.identity:
            k, z = divmod(a - self.k_size, 2)
            return ("T", k, "st"[z])
        return ("1",)


def _moore_product(L: MooreSemigroupLayout, a: int, b: int) -> int:
    n = L.n
    ca, cb = L.coords(a), L.coords(b)
    if ca[0] == "K" and cb[0] == "K":
        return L.k(ca[1], cb[2])
    if ca[0] == "T" and cb[0] == "T":
        return L.t((ca[1] + cb[1]) % n, cb[2])
    if ca[0] == "K":
        # (i,j)(k,z) = (i, k+j)
        return L.k(ca[1], (cb[1] + ca[2]) % n)
    k, z = ca[1], ca[2]
    i, col = cb[1], cb[2]
    if i == "x":
        return L.k("x", col)
    if i == "y":
        return L.k((k - 1) % n if z == "s" else k, col)
    return L.k((k + i) % n, col)


def moore_semigroup(n: int):
    """Return ``(S_n, M_n, layout)`` where ``M_n = S_n`` with an identity adjoined."""
    if n < 2:
        raise ValueError("n must be >= 2")
    L = MooreSemigroupLayout(n)
    N = L.k_size + L.t_size
    rows = [[_moore_product(L, a, b) for b in range(N)] for a in range(N)]
    names = []
    for a in range(N):
        c = L.coords(a)
        names.append(f"({c[1]},{c[2]})")
    S = validate(rows, names)
    return S, adjoin_identity(S), L


__all__ = [
    "MinimalIdealNotRectangular",
    "MooreSemigroupLayout",
    "WedgeMonoid",
    "cyclic_group",
    "direct_product",
    "moore_semigroup",
    "rectangular_band",
    "suspension_monoid",
    "trivial_monoid",
    "wedge",
    "wedge_monoid",
]
