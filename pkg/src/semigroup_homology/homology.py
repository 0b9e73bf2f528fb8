"""Bar chain complexes of finite monoids and their integral homology."""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from itertools import product
from typing import List, Optional

from .semigroup import FiniteSemigroup, NotAMonoid
from .snf import SparseMatrix, dense_matmul, kernel_basis, rank, smith_normal_form

log = logging.getLogger(__name__)

DEFAULT_COLUMN_CAP = 10**6


class HomologyError(RuntimeError):
    pass


class DegreeTooLarge(HomologyError):
    def __init__(self, degree: int, columns: int, cap: int):
        self.degree, self.columns, self.cap = degree, columns, cap
        super().__init__(f"C_{degree} has rank {columns}, above the column cap {cap}")


class InsufficientDegrees(HomologyError):
    pass


@dataclass(frozen=True)
class HomologyGroup:
    """``Z^free_rank + Z/d_1 + ... + Z/d_k`` with ``d_1 | d_2 | ...``."""
    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")
        if any(d < 2 for d in self.torsion):
            raise ValueError("torsion coefficients must be >= 2")

    @classmethod
    def from_divisors(cls, free_rank, divisors):
        from .snf import invariant_factors
        return cls(free_rank, tuple(d for d in invariant_factors(divisors) if d > 1))

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def reduced(self, degree: int) -> "HomologyGroup":
        """Reduced homology in ``degree`` (drops one Z in degree 0)."""
        if degree == 0:
            return HomologyGroup(max(self.free_rank - 1, 0), self.torsion)
        return self

    def __add__(self, other: "HomologyGroup") -> "HomologyGroup":
        return HomologyGroup.from_divisors(
            self.free_rank + other.free_rank, list(self.torsion) + list(other.torsion))

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_dict(cls, d) -> "HomologyGroup":
        return cls(d["free_rank"], tuple(d["torsion"]))

    @classmethod
    def parse(cls, text: str) -> "HomologyGroup":
        """Inverse of ``str``: ``"0"``, ``"Z"``, ``"Z^2 + Z/2 + Z/4"``."""
        text = text.strip()
        if text == "0":
            return cls()
        free, tors = 0, []
        for part in text.split("+"):
            part = part.strip()
            if part == "Z":
                free += 1
            elif part.startswith("Z^"):
                free += int(part[2:])
            elif part.startswith("Z/"):
                tors.append(int(part[2:]))
            else:
                raise ValueError(f"cannot parse homology term {part!r}")
        return cls.from_divisors(free, tors)

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


Z = HomologyGroup(1)
ZERO = HomologyGroup()


def cyclic(n: int) -> HomologyGroup:
    return HomologyGroup(0, (n,)) if n > 1 else ZERO


@dataclass
class ChainComplex:
    """``dims[q]`` is the rank of ``C_q``; ``boundaries[q-1]`` is ``d_q: C_q -> C_{q-1}``."""
    dims: List[int]
    boundaries: List[SparseMatrix]
    _snf_cache: dict = field(default_factory=dict, repr=False, compare=False)
    _rank_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if len(self.boundaries) != max(len(self.dims) - 1, 0):
            raise ValueError("need one boundary matrix per positive degree")
        for q, d in enumerate(self.boundaries, start=1):
            if d.shape != (self.dims[q - 1], self.dims[q]):
                raise ValueError(f"d_{q} has shape {d.shape}, expected {(self.dims[q - 1], self.dims[q])}")

    @property
    def qmax(self) -> int:
        return len(self.dims) - 1

    def boundary(self, q: int) -> SparseMatrix:
        if q <= 0:
            return SparseMatrix.zeros(0, self.dims[0])
        if q > self.qmax:
            return SparseMatrix.zeros(self.dims[self.qmax] if q == self.qmax + 1 else 0, 0)
        return self.boundaries[q - 1]

    def check(self) -> None:
        """Assert that consecutive boundaries compose to zero."""
        for q in range(2, self.qmax + 1):
            if not (self.boundary(q - 1) @ self.boundary(q)).is_zero():
                raise HomologyError(f"d_{q - 1} d_{q} != 0")

    def snf(self, q: int):
        if q not in self._snf_cache:
            self._snf_cache[q] = smith_normal_form(self.boundary(q))
        return self._snf_cache[q]

    def rank(self, q: int) -> int:
        if q in self._snf_cache:
            return self._snf_cache[q].rank
        if q not in self._rank_cache:
            self._rank_cache[q] = rank(self.boundary(q)) if 0 < q <= self.qmax else 0
        return self._rank_cache[q]


def _tuple_count(m: int, q: int) -> int:
    return m**q


def bar_complex(M: FiniteSemigroup, qmax: int, normalized: bool = True,
                column_cap: int = DEFAULT_COLUMN_CAP) -> ChainComplex:
    """Bar complex of ``M`` in degrees ``0..qmax``.

    ``C_q`` is free on ``q``-tuples (tuples avoiding the identity when
    ``normalized``), ``C_0 = Z``, and ``d = sum (-1)^i d_i`` with
    ``d_0`` dropping the first entry, ``d_q`` the last, and ``d_i``
    multiplying entries ``i`` and ``i+1``.  Unnormalized mode accepts any
    semigroup.
    """
    if qmax < 0:
        raise ValueError("qmax must be >= 0")
    if normalized:
        if M.identity is None:
            raise NotAMonoid("the normalized bar complex needs a monoid")
        gens = [a for a in range(M.order) if a != M.identity]
    else:
        gens = list(range(M.order))
    m = len(gens)
    top = _tuple_count(m, qmax)
    if top > column_cap:
        raise DegreeTooLarge(qmax, top, column_cap)
    pos = {a: i for i, a in enumerate(gens)}
    # product table in generator coordinates, None for the identity
    mult = [[pos.get(M.table[a][b]) for b in gens] for a in gens]

    dims = [_tuple_count(m, q) for q in range(qmax + 1)]
    boundaries = []
    for q in range(1, qmax + 1):
        t0 = time.perf_counter()
        boundaries.append(_bar_boundary(mult, m, q))
        log.debug("built d_%d (%d x %d) in %.2fs", q, dims[q - 1], dims[q], time.perf_counter() - t0)
    return ChainComplex(dims, boundaries)


def _bar_boundary(mult, m: int, q: int) -> SparseMatrix:
    ncols = m**q
    nrows = m ** (q - 1)
    powers = [m**k for k in range(q + 1)]
    cols = []
    last_sign = -1 if q % 2 else 1
    if q == 1:
        # both outer faces land on the empty tuple and cancel
        return SparseMatrix(1, ncols, [{} for _ in range(ncols)])
    for idx, tup in enumerate(product(range(m), repeat=q)):
        col = {}
        f0 = idx % powers[q - 1]
        col[f0] = 1
        fq = idx // m
        col[fq] = col.get(fq, 0) + last_sign
        sign = -1
        for i in range(1, q):
            # merge entries i-1 and i (0-based) of the tuple
            p = mult[tup[i - 1]][tup[i]]
            if p is not None:
                tail = powers[q - i - 1]
                head = idx // powers[q - i + 1]
                face = (head * m + p) * tail + idx % tail
                col[face] = col.get(face, 0) + sign
            sign = -sign
        cols.append({r: v for r, v in col.items() if v})
    return SparseMatrix(nrows, ncols, cols)


def homology(C: ChainComplex, q: int, method: str = "image") -> HomologyGroup:
    """``H_q = ker d_q / im d_(q+1)``.

    ``method="image"`` reads the torsion off the elementary divisors of
    ``d_(q+1)``; this is valid because ``ker d_q`` is a direct summand of
    ``C_q``.  ``method="kernel"`` rewrites ``d_(q+1)`` in an explicit
    integral basis of ``ker d_q`` first; it needs dense transforms and is
    meant for small complexes and cross-checks.
    """
    if q < 0:
        raise ValueError("degree must be >= 0")
    if q + 1 > C.qmax:
        raise InsufficientDegrees(f"H_{q} needs d_{q + 1}, complex stops at degree {C.qmax}")
    if method == "image":
        nullity = C.dims[q] - C.rank(q)
        res = C.snf(q + 1)
        return HomologyGroup(nullity - res.rank, tuple(res.torsion))
    if method == "kernel":
        return _homology_via_kernel(C, q)
    raise ValueError(f"unknown method {method!r}")


def _homology_via_kernel(C: ChainComplex, q: int) -> HomologyGroup:
    dq = C.boundary(q)
    dq1 = C.boundary(q + 1).to_dense()
    n = C.dims[q]
    if q == 0:
        basis_rows = [[int(i == j) for j in range(n)] for i in range(n)]
        r = 0
    else:
        _, Vi, r = kernel_basis(dq)
        basis_rows = Vi
    coords = dense_matmul(basis_rows, dq1) if dq1 and dq1[0] else [[] for _ in range(n)]
    if any(any(row) for row in coords[:r]):
        raise HomologyError(f"image of d_{q + 1} is not inside ker d_{q}")
    X = coords[r:]
    k = n - r
    if k == 0:
        return ZERO
    if not X[0]:
        return HomologyGroup(k)
    res = smith_normal_form(X)
    return HomologyGroup(k - res.rank, tuple(res.torsion))


def rational_betti(C: ChainComplex, q: int) -> int:
    if q + 1 > C.qmax:
        raise InsufficientDegrees(f"b_{q} needs d_{q + 1}, complex stops at degree {C.qmax}")
    return C.dims[q] - C.rank(q) - C.rank(q + 1)


def homology_profile(M: FiniteSemigroup, qmax: int, normalized: bool = True,
                     column_cap: int = DEFAULT_COLUMN_CAP, check: bool = False) -> List[HomologyGroup]:
    """``[H_0, ..., H_(qmax-1)]`` of ``BM`` from one bar complex."""
    C = bar_complex(M, qmax, normalized=normalized, column_cap=column_cap)
    if check:
        C.check()
    return [homology(C, q) for q in range(qmax)]


def format_profile(groups) -> str:
    return "(" + ", ".join(str(g) for g in groups) + ")"
