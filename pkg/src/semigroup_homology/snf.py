"""Sparse integer matrices and exact Smith normal form.

Entries are Python ints, so there is no overflow; the elimination picks
small, sparse pivots to keep entry growth and fill-in down.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import gcd
from typing import Iterable, List, Optional, Sequence


class SparseMatrix:
    """Column-major sparse integer matrix: ``cols[j]`` maps row -> value."""

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols: Optional[List[dict]] = None):
        self.nrows = nrows
        self.ncols = ncols
        if cols is None:
            cols = [{} for _ in range(ncols)]
        if len(cols) != ncols:
            raise ValueError(f"expected {ncols} columns, got {len(cols)}")
        self.cols = cols

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [{i: 1} for i in range(n)])

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], ncols: Optional[int] = None):
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if nrows else 0
        cols = [{} for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            for j, v in enumerate(row):
                if v:
                    cols[j][i] = int(v)
        return cls(nrows, ncols, cols)

    @classmethod
    def from_triples(cls, nrows, ncols, triples: Iterable):
        M = cls(nrows, ncols)
        for i, j, v in triples:
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise ValueError(f"entry ({i},{j}) outside {nrows}x{ncols}")
            if v:
                col = M.cols[j]
                nv = col.get(i, 0) + int(v)
                if nv:
                    col[i] = nv
                else:
                    col.pop(i, None)
        return M

    def to_dense(self) -> List[List[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                out[i][j] = v
        return out

    def triples(self):
        for j, col in enumerate(self.cols):
            for i in sorted(col):
                yield i, j, col[i]

    def rows(self) -> dict:
        """Row-major copy: row -> {col: value}, empty rows omitted."""
        out = {}
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                out.setdefault(i, {})[j] = v
        return out

    def transpose(self) -> "SparseMatrix":
        T = SparseMatrix(self.ncols, self.nrows)
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                T.cols[i][j] = v
        return T

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        mine = self.cols
        for col in other.cols:
            acc = {}
            for k, v in col.items():
                for i, w in mine[k].items():
                    acc[i] = acc.get(i, 0) + v * w
            out.append({i: v for i, v in acc.items() if v})
        return SparseMatrix(self.nrows, other.ncols, out)

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.cols == other.cols

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"

    def copy(self):
        return SparseMatrix(self.nrows, self.ncols, [dict(c) for c in self.cols])

    # text interchange: "rows cols nnz" then "row col value" lines
    def dumps(self) -> str:
        lines = [f"{self.nrows} {self.ncols} {self.nnz}"]
        lines += [f"{i} {j} {v}" for i, j, v in self.triples()]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "SparseMatrix":
        lines = [ln.split() for ln in text.splitlines() if ln.strip()]
        if not lines or len(lines[0]) != 3:
            raise ValueError("missing 'rows cols nnz' header")
        nrows, ncols, nnz = map(int, lines[0])
        body = lines[1:]
        if len(body) != nnz:
            raise ValueError(f"header promises {nnz} entries, found {len(body)}")
        return cls.from_triples(nrows, ncols, ((int(a), int(b), int(c)) for a, b, c in body))


def as_sparse(A) -> SparseMatrix:
    if isinstance(A, SparseMatrix):
        return A
    return SparseMatrix.from_dense([list(r) for r in A])


@dataclass
class SNFResult:
    diagonal: list
    rank: int
    transforms: Optional[tuple] = None  # (U, V, V_inverse, U_inverse), dense lists

    @property
    def elementary_divisors(self) -> list:
        return self.diagonal[: self.rank]

    @property
    def torsion(self) -> list:
        return [d for d in self.diagonal[: self.rank] if d > 1]


def invariant_factors(values: Iterable[int]) -> list:
    """Turn the nonzero entries of any diagonal form into the divisibility chain."""
    d = sorted(abs(v) for v in values if v)
    k = len(d)
    for i in range(k):
        for j in range(i + 1, k):
            a, b = d[i], d[j]
            if b % a:
                g = gcd(a, b)
                d[i], d[j] = g, a // g * b
    return sorted(d)


def smith_normal_form(A, transforms: bool = False) -> SNFResult:
    """Smith normal form of an integer matrix.

    Without ``transforms`` a sparse elimination is used.  With them a dense
    routine also returns unimodular ``U``, ``V`` and their inverses such that
    ``U A V`` is the diagonal matrix.
    """
    if transforms:
        M = A.to_dense() if isinstance(A, SparseMatrix) else [list(r) for r in A]
        ncols = A.ncols if isinstance(A, SparseMatrix) else (len(M[0]) if M else 0)
        return _dense_snf(M, len(M), ncols)
    A = as_sparse(A)
    nonzero = _sparse_diagonalize(A)
    ones = [d for d in nonzero if d == 1]
    rest = invariant_factors(d for d in nonzero if d != 1)
    diag = ones + rest
    rank = len(diag)
    diag += [0] * (min(A.shape) - rank)
    return SNFResult(diag, rank)


def elementary_divisors(A) -> list:
    return smith_normal_form(A).elementary_divisors


def _sparse_diagonalize(A: SparseMatrix) -> list:
    """Reduce ``A`` to a diagonal form and return its nonzero entries.

    Phase one pivots on unit entries, preferring short columns and short
    rows.  Whatever survives has no unit entries and is finished by a
    gcd-reducing elimination on the smallest entry.
    """
    rows = A.rows()
    cols = {}
    for r, row in rows.items():
        for c in row:
            cols.setdefault(c, set()).add(r)
    out = []

    def pivot_on(r, c, p):
        # p divides every entry of column c; clear the column with row ops,
        # then row r is cleared by column ops that touch nothing else
        prow = rows.pop(r)
        for c2 in prow:
            s = cols[c2]
            s.discard(r)
        touched = set(prow)
        for r2 in list(cols[c]):
            row2 = rows[r2]
            f = row2[c] // p
            for c2, v in prow.items():
                nv = row2.get(c2, 0) - f * v
                if nv:
                    if c2 not in row2:
                        cols[c2].add(r2)
                    row2[c2] = nv
                else:
                    row2.pop(c2, None)
                    cols[c2].discard(r2)
            if not row2:
                del rows[r2]
        for c2 in touched:
            if not cols[c2]:
                del cols[c2]
        touched.discard(c)
        out.append(abs(p))
        return touched

    heap = [(len(s), c) for c, s in cols.items()]
    heapq.heapify(heap)
    while heap:
        cnt, c = heapq.heappop(heap)
        s = cols.get(c)
        if s is None:
            continue
        if len(s) != cnt:
            heapq.heappush(heap, (len(s), c))
            continue
        best = None
        for r in s:
            v = rows[r][c]
            if v == 1 or v == -1:
                ln = len(rows[r])
                if best is None or ln < best[0]:
                    best = (ln, r, v)
                    if ln == 1:
                        break
        if best is None:
            continue
        for c2 in pivot_on(best[1], c, best[2]):
            if c2 in cols:
                heapq.heappush(heap, (len(cols[c2]), c2))

    # what is left has no unit entries; finish it modulo a minor
    if rows:
        out.extend(_modular_block_divisors(rows))
    return out


def _bareiss(M):
    """Fraction-free elimination with full pivoting; returns (rank, |last pivot|).

    The last pivot is an ``r x r`` minor of ``M``, and it is nonzero.
    """
    M = [list(r) for r in M]
    m = len(M)
    n = len(M[0]) if m else 0
    prev = 1
    k = 0
    while k < min(m, n):
        piv = None
        for i in range(k, m):
            for j in range(k, n):
                if M[i][j] and (piv is None or abs(M[i][j]) < abs(M[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        M[k], M[i] = M[i], M[k]
        for row in M:
            row[k], row[j] = row[j], row[k]
        p = M[k][k]
        for i in range(k + 1, m):
            a = M[i][k]
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * p - a * M[k][j]) // prev
            M[i][k] = 0
        prev = p
        k += 1
    return k, abs(prev)


def _modular_block_divisors(rows: dict) -> list:
    """Nonzero invariant factors of a small leftover block, computed mod D.

    D is a nonzero maximal minor, so every invariant factor divides it.  The
    lattice spanned by the columns of ``[B | D*I]`` has invariant factors
    ``d_1, ..., d_r, D, ..., D``, and reducing entries mod D never changes
    that lattice.  Entries therefore stay below D.
    """
    ridx = sorted(rows)
    cidx = sorted({c for row in rows.values() for c in row})
    B = [[rows[r].get(c, 0) for c in cidx] for r in ridx]
    r, D = _bareiss(B)
    if r == 0:
        return []
    if D == 1:
        return [1] * r
    m, n = len(B), len(B[0])

    def red(v):
        v %= D
        return v - D if 2 * v > D else v

    A = [[red(v) for v in row] for row in B]
    diag = []
    for k in range(min(m, n)):
        while True:
            piv = None
            for i in range(k, m):
                for j in range(k, n):
                    if A[i][j] and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                        piv = (i, j)
            if piv is None:
                break
            i, j = piv
            A[k], A[i] = A[i], A[k]
            for row in A:
                row[k], row[j] = row[j], row[k]
            p = A[k][k]
            done = True
            for i in range(k + 1, m):
                if A[i][k]:
                    q = A[i][k] // p
                    A[i] = [red(a - q * b) for a, b in zip(A[i], A[k])]
                    done = done and not A[i][k]
            for j in range(k + 1, n):
                if A[k][j]:
                    q = A[k][j] // p
                    for row in A:
                        row[j] = red(row[j] - q * row[k])
                    done = done and not A[k][j]
            if not done:
                continue
            # p must divide the rest, otherwise fold a bad row in and retry
            bad = next((i for i in range(k + 1, m) for j in range(k + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            A[k] = [red(a + b) for a, b in zip(A[k], A[bad])]
        if piv is None:
            break
        diag.append(A[k][k])
    # invariant factors of [diag | D*I]: gcds with D, then D for the rest
    vals = [gcd(v, D) for v in diag] + [D] * (m - len(diag))
    return invariant_factors(vals)[:r]


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _transpose(M, ncols):
    return [list(c) for c in zip(*M)] if M else [[] for _ in range(ncols)]


def _echelon_pass(A, P, Pi, start=0):
    """Row echelon form of ``A[start:, start:]`` by unimodular row operations.

    Each column is cleared Euclid style: the row with the smallest entry
    becomes the pivot and the others are reduced by rounded quotients.
    Every operation is applied to the rows of ``P`` and, inverted, to the
    columns of ``Pi``, so ``P A`` and ``P Pi = I`` stay in step.  Rows and
    columns before ``start`` must already be cleared.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    r = start
    for c in range(start, n):
        if r == m:
            break
        while True:
            live = [i for i in range(r, m) if A[i][c]]
            if not live:
                break
            i = min(live, key=lambda i: (abs(A[i][c]), sum(1 for x in A[i] if x)))
            if i != r:
                A[r], A[i] = A[i], A[r]
                P[r], P[i] = P[i], P[r]
                for row in Pi:
                    row[r], row[i] = row[i], row[r]
            p = A[r][c]
            for i in range(r + 1, m):
                b = A[i][c]
                if b:
                    f = (2 * b + p) // (2 * p)  # nearest quotient
                    A[i] = [q - f * x for x, q in zip(A[r], A[i])]
                    P[i] = [q - f * x for x, q in zip(P[r], P[i])]
                    for row in Pi:
                        row[r] += f * row[i]
            if not any(A[i][c] for i in range(r + 1, m)):
                break
        if A[r][c]:
            r += 1


def _dense_snf(A, m, n) -> SNFResult:
    """Smith form with transforms.

    Unit entries are pivoted on first (fewest nonzeros in their row and
    column), which keeps the transforms small.  The leftover block is
    finished by alternating row and column echelon passes; column passes
    are row passes on the transpose, tracking ``V^T`` and ``(V^-1)^T``.
    Once diagonal, pairs breaking the divisibility chain are mixed
    (row i += row j) and the passes rerun.
    """
    A = [list(r) for r in A]
    U, Ui = _identity(m), _identity(m)
    Vt, Vit = _identity(n), _identity(n)
    k = min(m, n)

    def swap(M, i, j):
        M[i], M[j] = M[j], M[i]

    t = 0
    while t < k:
        rowcnt = [sum(1 for x in A[i][t:] if x) for i in range(m)]
        colcnt = [sum(1 for i in range(t, m) if A[i][j]) for j in range(n)]
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] in (1, -1):
                    key = rowcnt[i] * colcnt[j]
                    if best is None or key < best[0]:
                        best = (key, i, j)
        if best is None:
            break
        _, i, j = best
        # row swap t <-> i, column swap t <-> j
        swap(A, t, i)
        swap(U, t, i)
        for row in Ui:
            row[t], row[i] = row[i], row[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        swap(Vt, t, j)
        for row in Vit:
            row[t], row[j] = row[j], row[t]
        p = A[t][t]
        for i in range(t + 1, m):
            f = A[i][t] * p  # p is its own inverse
            if f:
                A[i] = [q - f * x for x, q in zip(A[t], A[i])]
                U[i] = [q - f * x for x, q in zip(U[t], U[i])]
                for row in Ui:
                    row[t] += f * row[i]
        for j in range(t + 1, n):
            f = A[t][j] * p
            if f:
                A[t][j] = 0
                Vt[j] = [q - f * x for x, q in zip(Vt[t], Vt[j])]
                for row in Vit:
                    row[t] += f * row[j]
        t += 1

    while True:
        _echelon_pass(A, U, Ui, t)
        At = _transpose(A, m)
        _echelon_pass(At, Vt, Vit, t)
        A = _transpose(At, n) if n else [[] for _ in range(m)]
        if any(A[i][j] for i in range(t, m) for j in range(t, n) if i != j):
            continue
        bad = next(((i, j) for i in range(t, k) for j in range(i + 1, k)
                    if A[i][i] and A[j][j] % A[i][i] or not A[i][i] and A[j][j]), None)
        if bad is None:
            break
        i, j = bad
        A[i] = [p + q for p, q in zip(A[i], A[j])]
        U[i] = [p + q for p, q in zip(U[i], U[j])]
        for row in Ui:
            row[j] -= row[i]
    for i in range(k):
        if A[i][i] < 0:
            A[i] = [-x for x in A[i]]
            U[i] = [-x for x in U[i]]
            for row in Ui:
                row[i] = -row[i]
    diag = [A[i][i] for i in range(k)]
    rank = sum(1 for d in diag if d)
    V = _transpose(Vt, n)
    Vi = _transpose(Vit, n)
    return SNFResult(diag, rank, (U, V, Vi, Ui))


def rank(A) -> int:
    """Rank over the rationals by fraction-free sparse elimination."""
    A = as_sparse(A)
    rows = A.rows()
    cols = {}
    for r, row in rows.items():
        for c in row:
            cols.setdefault(c, set()).add(r)
    rk = 0
    heap = [(len(s), c) for c, s in cols.items()]
    heapq.heapify(heap)
    while heap:
        cnt, c = heapq.heappop(heap)
        s = cols.get(c)
        if not s:
            continue
        if len(s) != cnt:
            heapq.heappush(heap, (len(s), c))
            continue
        r = min(s, key=lambda x: (len(rows[x]), abs(rows[x][c])))
        prow = rows.pop(r)
        for c2 in prow:
            cols[c2].discard(r)
        p = prow[c]
        for r2 in list(cols[c]):
            row2 = rows[r2]
            a = row2[c]
            g = gcd(a, p)
            mp, ma = p // g, a // g
            new = {}
            for c2 in set(row2) | set(prow):
                v = mp * row2.get(c2, 0) - ma * prow.get(c2, 0)
                if v:
                    new[c2] = v
            content = 0
            for v in new.values():
                content = gcd(content, v)
                if content == 1:
                    break
            if content > 1:
                new = {k: v // content for k, v in new.items()}
            for c2 in row2:
                if c2 not in new:
                    cols[c2].discard(r2)
            for c2 in new:
                if c2 not in row2:
                    cols[c2].add(r2)
            if new:
                rows[r2] = new
            else:
                del rows[r2]
        rk += 1
        for c2 in prow:
            if c2 in cols:
                if cols[c2]:
                    heapq.heappush(heap, (len(cols[c2]), c2))
                else:
                    del cols[c2]
    return rk


def kernel_basis(A) -> tuple:
    """Return ``(basis_columns, V_inverse_rows, rank)`` for ``ker A``.

    ``basis_columns`` are the last ``ncols - rank`` columns of ``V`` from
    ``U A V = D``; they span the kernel over the integers.  The matching rows
    of ``V^-1`` give coordinates of any kernel vector in that basis.
    """
    res = smith_normal_form(A, transforms=True)
    V, Vi = res.transforms[1:3]
    n = len(V)
    r = res.rank
    basis = [[V[i][j] for i in range(n)] for j in range(r, n)]
    return basis, Vi, r


def dense_matmul(A, B):
    if not A:
        return []
    inner = len(B)
    ncols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner) if A[i][k]) for j in range(ncols)] for i in range(len(A))]
