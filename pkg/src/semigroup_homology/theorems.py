"""Numerical checks of the Moore-space, suspension, wedge and vanishing results.

The centrepiece is the length-three projective resolution of the trivial
module over ``Z M_n``::

    0 <- Z <-eps- Z M_n (x,0) <-phi- Z M_n <-psi- Z M_n (0,t) + Z K_n <-xi- Z K_n <- 0

realised as integer matrices on explicit Z-bases.  All modules involved are
free abelian on the listed bases, so exactness as ``Z M_n``-modules is the
same as exactness of these integer matrices, which is what gets checked.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import List, Optional

from .completion import group_completion
from .constructions import moore_semigroup, suspension_monoid, wedge
from .homology import (
    ChainComplex,
    DegreeTooLarge,
    DEFAULT_COLUMN_CAP,
    HomologyGroup,
    bar_complex,
    cyclic,
    homology,
    homology_profile,
    rational_betti,
    Z,
    ZERO,
)
from .semigroup import (
    FiniteSemigroup,
    SemigroupError,
    is_aperiodic,
    is_regular,
    minimal_ideal,
    principal_series,
)
from .snf import SparseMatrix, dense_matmul, kernel_basis, rank, smith_normal_form


class ExactnessFailure(AssertionError):
    def __init__(self, position: str, defect: str):
        self.position, self.defect = position, defect
        super().__init__(f"{position}: {defect}")


class NotRegular(SemigroupError):
    pass


class InfeasibleDegree(RuntimeError):
    pass


TERMS = ("Z", "ZM(x,0)", "ZM", "ZM(0,t)+ZK", "ZK")
MAPS = ("eps", "phi", "psi", "xi")


@dataclass
class ResolutionData:
    """Bases are lists of labels; ``maps[name]`` has rows indexed by the
    target basis and columns by the source basis.  ``maps[MAPS[i]]`` goes
    from ``TERMS[i+1]`` to ``TERMS[i]``."""
    n: int
    M: FiniteSemigroup
    layout: object
    bases: dict
    maps: dict

    def dims(self) -> list:
        return [len(self.bases[t]) for t in TERMS]

    def with_map(self, name: str, matrix: SparseMatrix) -> "ResolutionData":
        maps = dict(self.maps)
        maps[name] = matrix
        return ResolutionData(self.n, self.M, self.layout, self.bases, maps)


def _orbit(M: FiniteSemigroup, a: int) -> list:
    """The left ideal ``M a`` in index order."""
    return sorted({M.table[m][a] for m in range(M.order)})


def build_resolution(n: int) -> ResolutionData:
    _, M, L = moore_semigroup(n)
    t = M.table
    x0, y0 = L.k("x", 0), L.k("y", 0)
    t0, s1 = L.t(0, "t"), L.t(1, "s")
    K = list(range(L.k_size))

    orbit_x0 = _orbit(M, x0)
    orbit_t0 = _orbit(M, t0)
    mid = [("P", m) for m in orbit_t0] + [("K", k) for k in K]
    bases = {
        "Z": ["1"],
        "ZM(x,0)": orbit_x0,
        "ZM": list(range(M.order)),
        "ZM(0,t)+ZK": mid,
        "ZK": K,
    }
    ix = {name: {b: i for i, b in enumerate(basis)} for name, basis in bases.items()}

    def matrix(src, dst, image):
        triples = []
        for j, b in enumerate(bases[src]):
            for label, coeff in image(b):
                triples.append((ix[dst][label], j, coeff))
        return SparseMatrix.from_triples(len(bases[dst]), len(bases[src]), triples)

    # augmentation
    eps = matrix("ZM(x,0)", "Z", lambda b: [("1", 1)])
    # right multiplication by (y,0) - (x,0)
    phi = matrix("ZM", "ZM(x,0)", lambda m: [(t[m][y0], 1), (t[m][x0], -1)])

    def psi_image(b):
        kind, m = b
        if kind == "P":
            # c(0,t) |-> c[(0,t) - (1,s)]
            return [(t[m][t0], 1), (t[m][s1], -1)]
        return [(m, 1)]

    psi = matrix("ZM(0,t)+ZK", "ZM", psi_image)

    def xi_image(k):
        w, i = L.coords(k)[1:]
        return [(("P", t[k][t0]), 1), (("K", L.k(w, i + 1)), 1), (("K", L.k(w, i)), -1)]

    xi = matrix("ZK", "ZM(0,t)+ZK", xi_image)
    return ResolutionData(n, M, L, bases, {"eps": eps, "phi": phi, "psi": psi, "xi": xi})


@dataclass
class ExactnessReport:
    n: int
    checks: list = field(default_factory=list)  # (check, position, ok, detail)

    @property
    def ok(self) -> bool:
        return all(c[2] for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c[2]]


def _saturation_defect(outgoing: SparseMatrix, incoming: SparseMatrix) -> Optional[str]:
    """None when the image of ``incoming`` equals the kernel of ``outgoing``."""
    basis, Vi, r = kernel_basis(outgoing)
    k = outgoing.ncols - r
    coords = dense_matmul(Vi, incoming.to_dense())
    if any(any(row) for row in coords[:r]):
        return "image not contained in kernel"
    X = coords[r:]
    if k == 0:
        return None
    res = smith_normal_form(X)
    if res.rank != k:
        return f"image has rank {res.rank} inside a kernel of rank {k}"
    if res.torsion:
        return f"image has finite index, elementary divisors {res.torsion}"
    return None


def verify_exactness(R: ResolutionData, raise_on_failure: bool = True) -> ExactnessReport:
    """Check the resolution over Z.

    (a) consecutive composites vanish, (b) ranks add up at interior terms,
    (c) images are saturated, i.e. equal to kernels, (d) ``xi`` is
    injective, (e) ``eps`` is onto ``Z``.
    """
    rep = ExactnessReport(R.n)
    maps = [R.maps[m] for m in MAPS]
    dims = R.dims()
    ranks = [rank(f) for f in maps]

    for i in range(3):
        ok = (maps[i] @ maps[i + 1]).is_zero()
        rep.checks.append(("a", f"{MAPS[i]}*{MAPS[i + 1]}", ok, "" if ok else "composite is nonzero"))
    for i in (1, 2, 3):
        total = ranks[i - 1] + ranks[i]
        ok = total == dims[i]
        rep.checks.append(("b", TERMS[i], ok, "" if ok else f"rank {ranks[i - 1]} + {ranks[i]} != dim {dims[i]}"))
    for i in (1, 2, 3):
        defect = _saturation_defect(maps[i - 1], maps[i])
        rep.checks.append(("c", TERMS[i], defect is None, defect or ""))
    ok = ranks[3] == dims[4]
    rep.checks.append(("d", "xi", ok, "" if ok else f"xi has rank {ranks[3]} < {dims[4]}"))
    diag = smith_normal_form(maps[0]).elementary_divisors
    ok = diag == [1]
    rep.checks.append(("e", "eps", ok, "" if ok else f"eps has elementary divisors {diag}"))

    if raise_on_failure and not rep.ok:
        check, pos, _, detail = rep.failures()[0]
        raise ExactnessFailure(f"({check}) at {pos}", detail)
    return rep


@dataclass
class TensoredComplex:
    """``A`` is ``(n+1) x 1`` and ``B`` is ``n x (n+1)``, acting on row
    vectors from the right: row ``i`` of ``B`` is the image of generator
    ``i``.  Generators: ``(0,t), (x,0), ..., (x,n-1)`` in the middle term
    and ``(x,0), ..., (x,n-1)`` on the right, which matches the displayed
    matrices with the identity permutation."""
    n: int
    A: list
    B: list
    zero_map: list

    def as_chain_complex(self) -> ChainComplex:
        n = self.n
        d1 = SparseMatrix.from_dense(self.zero_map)
        d2 = SparseMatrix.from_dense([list(col) for col in zip(*self.A)])
        d3 = SparseMatrix.from_dense([list(col) for col in zip(*self.B)])
        d4 = SparseMatrix.zeros(n, 0)
        return ChainComplex([1, 1, n + 1, n, 0], [d1, d2, d3, d4])


def _collapse(R: ResolutionData, term: str, label) -> int:
    """Image of a basis element in ``Z (x)_M term``; each cyclic summand becomes one Z."""
    L = R.layout
    if term in ("Z", "ZM(x,0)", "ZM"):
        return 0
    if term == "ZM(0,t)+ZK":
        kind, m = label
        return 0 if kind == "P" else 1 + L.coords(m)[2]
    return L.coords(label)[2]


def tensored_complex(n: int, R: Optional[ResolutionData] = None) -> TensoredComplex:
    """Tensor the resolution (minus the augmentation) with the trivial right module."""
    if R is None:
        R = build_resolution(n)
    L = R.layout
    gens = {
        "ZM(x,0)": [L.k("x", 0)],
        "ZM": [R.M.identity],
        "ZM(0,t)+ZK": [("P", L.t(0, "t"))] + [("K", L.k("x", i)) for i in range(n)],
        "ZK": [L.k("x", i) for i in range(n)],
    }
    out = {}
    for name, src, dst in (("phi", "ZM", "ZM(x,0)"), ("psi", "ZM(0,t)+ZK", "ZM"), ("xi", "ZK", "ZM(0,t)+ZK")):
        f = R.maps[name]
        src_ix = {b: i for i, b in enumerate(R.bases[src])}
        ntgt = len(gens[dst])

        def collapsed_image(label):
            v = [0] * ntgt
            for row, coeff in f.cols[src_ix[label]].items():
                v[_collapse(R, dst, R.bases[dst][row])] += coeff
            return v

        rows = [collapsed_image(g) for g in gens[src]]
        # well defined: every basis element maps like the generator of its summand
        for b in R.bases[src]:
            if collapsed_image(b) != rows[_collapse(R, src, b)]:
                raise ExactnessFailure(f"tensoring {name}", f"basis element {b!r} is not equivariant")
        out[name] = rows
    return TensoredComplex(n, A=out["psi"], B=out["xi"], zero_map=[list(r) for r in zip(*out["phi"])])


def displayed_matrices(n: int):
    """The displayed ``A`` and ``B`` written down directly, for comparison."""
    A = [[0]] + [[1] for _ in range(n)]
    B = []
    for i in range(n):
        row = [1] + [0] * n
        row[1 + i] -= 1
        row[1 + (i + 1) % n] += 1
        B.append(row)
    return A, B


def homology_from_resolution(n: int) -> List[HomologyGroup]:
    C = tensored_complex(n).as_chain_complex()
    return [homology(C, q) for q in range(4)]


# -- reports -----------------------------------------------------------------

@dataclass
class CheckReport:
    claim: str
    parameters: dict
    expected: object
    computed: object
    verdict: bool
    elapsed: float

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "parameters": self.parameters,
            "expected": self.expected,
            "computed": self.computed,
            "verdict": "pass" if self.verdict else "fail",
            "elapsed": round(self.elapsed, 6),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d) -> "CheckReport":
        return cls(d["claim"], d["parameters"], d["expected"], d["computed"],
                   d["verdict"] == "pass", d["elapsed"])


def _strs(groups) -> list:
    return [str(g) for g in groups]


def check_moore(n: int) -> CheckReport:
    t0 = time.perf_counter()
    R = build_resolution(n)
    exact = verify_exactness(R, raise_on_failure=False)
    T = tensored_complex(n, R)
    A, B = displayed_matrices(n)
    groups = homology_from_resolution(n)
    expected = [Z, ZERO, cyclic(n), ZERO]
    computed = {
        "exact": exact.ok,
        "failed_checks": [f"({c}) {p}: {d}" for c, p, _, d in exact.failures()],
        "matrices_match": T.A == A and T.B == B,
        "homology": _strs(groups),
    }
    ok = exact.ok and computed["matrices_match"] and groups == expected
    return CheckReport("moore", {"n": n}, {"exact": True, "matrices_match": True, "homology": _strs(expected)},
                       computed, ok, time.perf_counter() - t0)


def _profile(M, qmax, column_cap):
    try:
        return homology_profile(M, qmax, column_cap=column_cap)
    except DegreeTooLarge as exc:
        raise InfeasibleDegree(str(exc)) from exc


def check_suspension_shift(S: FiniteSemigroup, qmax: int, column_cap: int = DEFAULT_COLUMN_CAP) -> CheckReport:
    """``BJ(S)`` is simply connected and ``H_q(BJ(S)) = H_(q-1)(BS)`` for ``2 <= q < qmax``."""
    t0 = time.perf_counter()
    J = suspension_monoid(S)
    hs = _profile(S, max(qmax - 1, 1), column_cap)
    hj = _profile(J, qmax, column_cap)
    expected = [Z, ZERO] + [hs[q - 1] for q in range(2, qmax)]
    expected = expected[:qmax]
    pi1 = group_completion(J).order
    ok = hj == expected and pi1 == 1
    return CheckReport("suspension", {"order": S.order, "qmax": qmax},
                       {"homology": _strs(expected), "pi1_order": 1},
                       {"homology": _strs(hj), "pi1_order": pi1, "base_homology": _strs(hs)},
                       ok, time.perf_counter() - t0)


def check_wedge_additivity(M: FiniteSemigroup, N: FiniteSemigroup, qmax: int,
                           column_cap: int = DEFAULT_COLUMN_CAP) -> CheckReport:
    """Reduced homology of the wedge monoid is the sum of the factors' reduced homology."""
    t0 = time.perf_counter()
    W = wedge(M, N)
    hm = _profile(M, qmax, column_cap)
    hn = _profile(N, qmax, column_cap)
    hw = _profile(W.semigroup, qmax, column_cap)
    expected = [hm[q].reduced(q) + hn[q].reduced(q) for q in range(qmax)]
    computed = [hw[q].reduced(q) for q in range(qmax)]
    Kw = set(minimal_ideal(W.semigroup).elements)
    J = minimal_ideal(N).elements
    KxJ = {W.embed_KN[(k, j)] for k in W.K for j in J}
    ok = expected == computed and Kw == KxJ
    return CheckReport("wedge", {"orders": [M.order, N.order], "wedge_order": W.semigroup.order, "qmax": qmax},
                       {"reduced_homology": _strs(expected), "minimal_ideal_size": len(KxJ)},
                       {"reduced_homology": _strs(computed), "minimal_ideal_size": len(Kw)},
                       ok, time.perf_counter() - t0)


def check_regular_vanishing(S: FiniteSemigroup, q_lo: int, q_hi: int,
                            column_cap: int = DEFAULT_COLUMN_CAP) -> CheckReport:
    """Aperiodic regular monoids: ``H_q = 0`` on ``[q_lo, q_hi]``.  Other
    regular monoids: rational Betti numbers vanish there.  The report
    records the bound ``3j - 2`` for ``j`` principal-series factors."""
    if not is_regular(S):
        raise NotRegular("check_regular_vanishing needs a regular monoid")
    t0 = time.perf_counter()
    factors = len(principal_series(S).ideals)
    bound = 3 * factors - 2
    aperiodic = is_aperiodic(S)
    try:
        C = bar_complex(S, q_hi + 1, column_cap=column_cap)
    except DegreeTooLarge as exc:
        raise InfeasibleDegree(str(exc)) from exc
    degrees = list(range(q_lo, q_hi + 1))
    if aperiodic:
        computed = [str(homology(C, q)) for q in degrees]
        expected = ["0"] * len(degrees)
    else:
        computed = [rational_betti(C, q) for q in degrees]
        expected = [0] * len(degrees)
    return CheckReport("regular-vanishing",
                       {"order": S.order, "q_lo": q_lo, "q_hi": q_hi, "j_classes": factors,
                        "bound": bound, "aperiodic": aperiodic, "beyond_bound": q_lo > bound},
                       expected, computed, computed == expected, time.perf_counter() - t0)
