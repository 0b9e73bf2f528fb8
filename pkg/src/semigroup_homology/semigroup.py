"""Finite semigroups given by multiplication tables.

Elements are the integers ``0..order-1`` and ``table[i][j]`` is the index of
the product ``i*j``.  Everything here is a pure function of an immutable
:class:`FiniteSemigroup`.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Optional, Sequence


class SemigroupError(ValueError):
    pass


class ShapeError(SemigroupError):
    pass


class NonAssociative(SemigroupError):
    def __init__(self, i: int, j: int, k: int):
        self.i, self.j, self.k = i, j, k
        super().__init__(f"table is not associative at ({i}*{j})*{k} != {i}*({j}*{k})")


class NotIdempotent(SemigroupError):
    pass


class NotAnIdeal(SemigroupError):
    pass


class NotAMonoid(SemigroupError):
    pass


@dataclass(frozen=True)
class FiniteSemigroup:
    order: int
    table: tuple
    identity: Optional[int] = None
    zero: Optional[int] = None
    names: Optional[tuple] = None

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def product(self, *elements: int) -> int:
        it = iter(elements)
        acc = next(it)
        for x in it:
            acc = self.table[acc][x]
        return acc

    def name(self, i: int) -> str:
        if self.names is None:
            return str(i)
        return self.names[i]

    @property
    def is_monoid(self) -> bool:
        return self.identity is not None

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteSemigroup(order={self.order}, identity={self.identity}, zero={self.zero})"


@dataclass(frozen=True)
class IdealData:
    elements: tuple
    is_minimal: bool = False

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self.elements


@dataclass(frozen=True)
class PrincipalSeries:
    ideals: tuple
    certified: bool = False

    def __len__(self):
        return len(self.ideals)


@dataclass(frozen=True)
class MaximalSubgroupData:
    idempotent: int
    elements: tuple
    table: tuple

    @property
    def order(self) -> int:
        return len(self.elements)


def _find_identity(table) -> Optional[int]:
    n = len(table)
    for e in range(n):
        if all(table[e][i] == i and table[i][e] == i for i in range(n)):
            return e
    return None


def _find_zero(table) -> Optional[int]:
    n = len(table)
    for z in range(n):
        if all(table[z][i] == z and table[i][z] == z for i in range(n)):
            return z
    return None


def check_associative(table) -> Optional[tuple]:
    """Return the first triple ``(i, j, k)`` violating associativity, or None."""
    n = len(table)
    for i in range(n):
        row_i = table[i]
        for j in range(n):
            ij = row_i[j]
            row_ij = table[ij]
            row_j = table[j]
            for k in range(n):
                if row_ij[k] != row_i[row_j[k]]:
                    return (i, j, k)
    return None


def validate(table: Sequence[Sequence[int]], names: Optional[Sequence[str]] = None) -> FiniteSemigroup:
    """Check a raw table and wrap it as a :class:`FiniteSemigroup`.

    Raises :class:`ShapeError` for ragged or out-of-range tables and
    :class:`NonAssociative` naming the first bad triple.
    """
    try:
        rows = [list(r) for r in table]
    except TypeError as exc:
        raise ShapeError("table must be a sequence of rows") from exc
    n = len(rows)
    if n == 0:
        raise ShapeError("a semigroup needs at least one element")
    for r, row in enumerate(rows):
        if len(row) != n:
            raise ShapeError(f"row {r} has length {len(row)}, expected {n}")
        for c, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, int):
                try:
                    iv = int(v)
                except (TypeError, ValueError) as exc:
                    raise ShapeError(f"entry ({r},{c}) is not an integer") from exc
                if iv != v:
                    raise ShapeError(f"entry ({r},{c}) is not an integer")
                row[c] = v = iv
            if not 0 <= v < n:
                raise ShapeError(f"entry ({r},{c}) = {v} out of range 0..{n - 1}")
    if names is not None and len(names) != n:
        raise ShapeError(f"{len(names)} names given for {n} elements")
    bad = check_associative(rows)
    if bad is not None:
        raise NonAssociative(*bad)
    frozen = tuple(tuple(r) for r in rows)
    return FiniteSemigroup(
        order=n,
        table=frozen,
        identity=_find_identity(frozen),
        zero=_find_zero(frozen),
        names=tuple(names) if names is not None else None,
    )


def _names_or_default(S: FiniteSemigroup) -> list:
    return [S.name(i) for i in range(S.order)]


def adjoin_identity(S: FiniteSemigroup) -> FiniteSemigroup:
    """``S`` with a fresh identity appended as the last element.

    A new element is added even when ``S`` is already a monoid.
    """
    n = S.order
    e = n
    rows = [list(S.table[i]) + [i] for i in range(n)]
    rows.append(list(range(n + 1)))
    rows[e][e] = e
    names = _names_or_default(S) + ["1"]
    return validate(rows, names)


def adjoin_zero(S: FiniteSemigroup) -> FiniteSemigroup:
    n = S.order
    z = n
    rows = [list(S.table[i]) + [z] for i in range(n)]
    rows.append([z] * (n + 1))
    names = _names_or_default(S) + ["0"]
    return validate(rows, names)


def direct_product(S: FiniteSemigroup, T: FiniteSemigroup) -> FiniteSemigroup:
    """Componentwise product; ``(s, t)`` has index ``s * |T| + t``."""
    m = T.order
    N = S.order * m
    rows = [[0] * N for _ in range(N)]
    for a in range(N):
        s1, t1 = divmod(a, m)
        for b in range(N):
            s2, t2 = divmod(b, m)
            rows[a][b] = S.table[s1][s2] * m + T.table[t1][t2]
    names = [f"({S.name(s)},{T.name(t)})" for s in range(S.order) for t in range(m)]
    return validate(rows, names)


def relabel(S: FiniteSemigroup, perm: Sequence[int]) -> FiniteSemigroup:
    """Isomorphic copy where old element ``i`` becomes ``perm[i]``."""
    n = S.order
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    rows = [[perm[S.table[inv[a]][inv[b]]] for b in range(n)] for a in range(n)]
    names = [S.name(inv[a]) for a in range(n)]
    return validate(rows, names)


def idempotents(S: FiniteSemigroup) -> frozenset:
    return frozenset(e for e in range(S.order) if S.table[e][e] == e)


def left_ideal(S: FiniteSemigroup, a: int) -> frozenset:
    """``S^1 a``."""
    return frozenset([a]) | frozenset(S.table[s][a] for s in range(S.order))


def right_ideal(S: FiniteSemigroup, a: int) -> frozenset:
    """``a S^1``."""
    return frozenset([a]) | frozenset(S.table[a][s] for s in range(S.order))


def principal_ideal(S: FiniteSemigroup, a: int) -> frozenset:
    """Two-sided principal ideal ``S^1 a S^1``."""
    t = S.table
    out = set(left_ideal(S, a))
    for x in list(out):
        row = t[x]
        out.update(row)
    return frozenset(out)


def ideal_closure(S: FiniteSemigroup, generators: Iterable[int]) -> frozenset:
    out = set()
    for a in generators:
        if a not in out:
            out |= principal_ideal(S, a)
    return frozenset(out)


def is_ideal(S: FiniteSemigroup, elements: Iterable[int]) -> bool:
    I = set(elements)
    if not I:
        return False
    t = S.table
    for a in I:
        for s in range(S.order):
            if t[s][a] not in I or t[a][s] not in I:
                return False
    return True


def minimal_ideal(S: FiniteSemigroup) -> IdealData:
    """The unique minimal ideal, as the intersection of all principal ideals."""
    current = frozenset(range(S.order))
    for a in range(S.order):
        current &= principal_ideal(S, a)
    return IdealData(tuple(sorted(current)), is_minimal=True)


def _elements_of(S_or_ideal) -> tuple:
    if isinstance(S_or_ideal, FiniteSemigroup):
        return tuple(range(S_or_ideal.order))
    return tuple(S_or_ideal.elements)


def is_band(S: FiniteSemigroup, elements=None) -> bool:
    els = range(S.order) if elements is None else elements
    return all(S.table[e][e] == e for e in els)


def is_rectangular_band(S: FiniteSemigroup, ideal: Optional[IdealData] = None) -> bool:
    """True iff every element is idempotent and ``xyx = x`` throughout.

    With ``ideal`` given the test runs on that subsemigroup.
    """
    els = _elements_of(S if ideal is None else ideal)
    t = S.table
    for x in els:
        if t[x][x] != x:
            return False
        for y in els:
            if t[t[x][y]][x] != x:
                return False
    return True


def is_regular(S: FiniteSemigroup) -> bool:
    t = S.table
    n = S.order
    return all(any(t[t[s][u]][s] == s for u in range(n)) for s in range(n))


def is_regular_via_idempotents(S: FiniteSemigroup) -> bool:
    """Regularity tested as: every principal ideal is generated by an idempotent."""
    gens = {principal_ideal(S, e) for e in idempotents(S)}
    return all(principal_ideal(S, a) in gens for a in range(S.order))


def maximal_subgroup(S: FiniteSemigroup, e: int) -> MaximalSubgroupData:
    """Group of units of the local monoid ``eSe``."""
    t = S.table
    if t[e][e] != e:
        raise NotIdempotent(f"element {e} is not idempotent")
    local = sorted({t[t[e][s]][e] for s in range(S.order)})
    units = [g for g in local if any(t[g][h] == e and t[h][g] == e for h in local)]
    pos = {g: i for i, g in enumerate(units)}
    table = tuple(tuple(pos[t[g][h]] for h in units) for g in units)
    return MaximalSubgroupData(e, tuple(units), table)


def is_aperiodic(S: FiniteSemigroup) -> bool:
    return all(maximal_subgroup(S, e).order == 1 for e in idempotents(S))


def is_aperiodic_by_powers(S: FiniteSemigroup) -> bool:
    """Aperiodicity as ``s^k = s^(k+1)`` for some ``k`` and every ``s``."""
    t = S.table
    for s in range(S.order):
        seen = []
        p = s
        while p not in seen:
            seen.append(p)
            p = t[p][s]
        # p is the first repeated power; the cycle has length 1 iff p*s == p
        if t[p][s] != p:
            return False
    return True


def principal_series(S: FiniteSemigroup, certify_limit: int = 25) -> PrincipalSeries:
    """An unrefinable chain of ideals from ``S`` down to the minimal ideal.

    Each step removes one J-class that is maximal among those remaining.  For
    ``|S| <= certify_limit`` every step is certified: each removed element
    regenerates the larger ideal together with the smaller one.
    """
    n = S.order
    pideal = [principal_ideal(S, a) for a in range(n)]
    current = frozenset(range(n))
    chain = [current]
    minimal = frozenset(minimal_ideal(S).elements)
    while current != minimal:
        # a J-class maximal in `current`: its principal ideal is not strictly
        # contained in the principal ideal of another element of `current`
        best = None
        for a in sorted(current - minimal):
            if not any(pideal[a] < pideal[b] for b in current):
                best = a
                break
        jclass = frozenset(b for b in current if pideal[b] == pideal[best])
        current = current - jclass
        chain.append(current)
    certified = False
    if n <= certify_limit:
        certified = all(_unrefinable(S, big, small) for big, small in zip(chain, chain[1:]))
    ideals = tuple(IdealData(tuple(sorted(I)), is_minimal=(I == minimal)) for I in chain)
    return PrincipalSeries(ideals, certified)


def _unrefinable(S: FiniteSemigroup, big: frozenset, small: frozenset) -> bool:
    if not (is_ideal(S, big) and is_ideal(S, small) and small < big):
        return False
    return all(small | principal_ideal(S, a) == big for a in big - small)


def rees_quotient(S: FiniteSemigroup, I: IdealData) -> FiniteSemigroup:
    """Collapse ``I`` to a zero; survivors keep their relative order, zero is last."""
    ideal = set(I.elements)
    if not is_ideal(S, ideal):
        raise NotAnIdeal(f"{sorted(ideal)} is not an ideal")
    keep = [a for a in range(S.order) if a not in ideal]
    z = len(keep)
    pos = {a: i for i, a in enumerate(keep)}
    for a in ideal:
        pos[a] = z
    rows = [[pos[S.table[a][b]] for b in keep] + [z] for a in keep]
    rows.append([z] * (z + 1))
    names = [S.name(a) for a in keep] + ["0"]
    return validate(rows, names)


def j_classes(S: FiniteSemigroup) -> list:
    groups = {}
    for a in range(S.order):
        groups.setdefault(principal_ideal(S, a), []).append(a)
    return sorted((tuple(v) for v in groups.values()), key=lambda c: c[0])


# -- table file formats ------------------------------------------------------

def dumps_table(S: FiniteSemigroup) -> str:
    lines = [str(S.order)]
    lines += [" ".join(str(v) for v in row) for row in S.table]
    if S.names is not None:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="").writerow(S.names)
        lines.append("# names: " + buf.getvalue())
    return "\n".join(lines) + "\n"


def loads_table(text: str) -> FiniteSemigroup:
    names = None
    rows = []
    order = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("names:"):
                # labels may contain commas, so they are CSV-quoted
                names = next(csv.reader([body[len("names:"):].strip()]))
            continue
        try:
            nums = [int(x) for x in line.split()]
        except ValueError as exc:
            raise ShapeError(f"bad line {raw!r}") from exc
        if order is None:
            if len(nums) != 1:
                raise ShapeError("first line must hold the order")
            order = nums[0]
        else:
            rows.append(nums)
    if order is None:
        raise ShapeError("empty table file")
    if len(rows) != order:
        raise ShapeError(f"expected {order} rows, found {len(rows)}")
    return validate(rows, names)


def to_json(S: FiniteSemigroup) -> dict:
    doc = {"order": S.order, "table": [list(r) for r in S.table]}
    if S.names is not None:
        doc["names"] = list(S.names)
    return doc


def from_json(doc) -> FiniteSemigroup:
    if isinstance(doc, str):
        doc = json.loads(doc)
    table = doc["table"]
    if "order" in doc and doc["order"] != len(table):
        raise ShapeError(f"order {doc['order']} does not match {len(table)} rows")
    return validate(table, doc.get("names"))


def load(path: str) -> FiniteSemigroup:
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return from_json(json.loads(text))
    return loads_table(text)


def all_tables(n: int):
    """Yield every associative table on ``n`` elements (brute force, n <= 3)."""
    for flat in product(range(n), repeat=n * n):
        rows = [flat[i * n:(i + 1) * n] for i in range(n)]
        if check_associative(rows) is None:
            yield validate(rows)
