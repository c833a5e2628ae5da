"""Integer homology of finite simplicial sets from normalized chains."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .ez import EZMap, EZObject
from .sset import pi0

Matrix = list[list[int]]


@dataclass
class ChainComplex:
    """``ranks[d]`` generators in degree ``d``; ``boundary[d]`` is ``C_d -> C_{d-1}``
    as a ``ranks[d-1] × ranks[d]`` matrix."""

    ranks: list[int]
    boundary: dict[int, Matrix]
    basis: list[list[int]]

    def matrix(self, d: int) -> Matrix:
        if d <= 0 or d >= len(self.ranks):
            rows = self.ranks[d - 1] if 0 < d <= len(self.ranks) else 0
            cols = self.ranks[d] if 0 <= d < len(self.ranks) else 0
            return [[0] * cols for _ in range(rows)]
        return self.boundary[d]


def chain_complex(X: EZObject) -> ChainComplex:
    if X.axes != 1:
        raise ValueError("chains are built for simplicial sets")
    top = X.dimension()
    basis = [X.generators_of((d,)) for d in range(top + 1)]
    pos = [{g: k for k, g in enumerate(b)} for b in basis]
    boundary = {}
    for d in range(1, top + 1):
        M = [[0] * len(basis[d]) for _ in basis[d - 1]]
        for col, g in enumerate(basis[d]):
            for i, fc in enumerate(X.faces[g][0]):
                if fc.is_generator():
                    M[pos[d - 1][fc.gen]][col] += -1 if i % 2 else 1
        boundary[d] = M
    return ChainComplex([len(b) for b in basis], boundary, basis)


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A or not B:
        return [[0] * (len(B[0]) if B else 0) for _ in A]
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def smith_normal_form(M: Matrix) -> tuple[list[int], int]:
    """Invariant factors (positive, each dividing the next) and the rank."""
    A = [list(r) for r in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        # smallest non-zero entry of the remaining block as pivot
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        A[t], A[i] = A[i], A[t]
        for r in A:
            r[t], r[j] = r[j], r[t]
        done = False
        while not done:
            done = True
            p = A[t][t]
            for i in range(t + 1, rows):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = A[t][j] // p
                if q:
                    for r in A:
                        r[j] -= q * r[t]
                if A[t][j]:
                    done = False
            if not done:
                # a remainder is smaller than the pivot: move it into place
                best = None
                for i in range(t, rows):
                    if A[i][t] and (best is None or abs(A[i][t]) < abs(A[best][t])):
                        best = i
                bi = best
                bj = None
                for j in range(t, cols):
                    if A[t][j] and (bj is None or abs(A[t][j]) < abs(A[t][bj])):
                        bj = j
                if abs(A[bi][t]) <= abs(A[t][bj]):
                    A[t], A[bi] = A[bi], A[t]
                else:
                    for r in A:
                        r[t], r[bj] = r[bj], r[t]
                continue
            # the pivot must divide the rest of the block
            for i in range(t + 1, rows):
                bad = next((j for j in range(t + 1, cols) if A[i][j] % p), None)
                if bad is not None:
                    A[t] = [a + b for a, b in zip(A[t], A[i])]
                    done = False
                    break
        diag.append(abs(A[t][t]))
        t += 1
    return [d for d in diag if d > 1], len(diag)


@dataclass
class Homology:
    betti: int
    torsion: list[int] = field(default_factory=list)

    def as_tuple(self):
        return self.betti, tuple(self.torsion)


def homology_of(C: ChainComplex, d: int) -> Homology:
    if d < 0:
        raise ValueError("degree must be non-negative")
    n = C.ranks[d] if d < len(C.ranks) else 0
    _, r_out = smith_normal_form(C.matrix(d)) if 0 < d < len(C.ranks) else ([], 0)
    tors, r_in = smith_normal_form(C.matrix(d + 1)) if d + 1 < len(C.ranks) else ([], 0)
    return Homology(n - r_out - r_in, tors)


def homology(X: EZObject, d: int) -> Homology:
    return homology_of(chain_complex(X), d)


def chain_map(f: EZMap, C: ChainComplex, D: ChainComplex, d: int) -> Matrix:
    """``f_# : C_d -> D_d``; degenerate images vanish."""
    rows = D.ranks[d] if d < len(D.ranks) else 0
    cols = C.ranks[d] if d < len(C.ranks) else 0
    M = [[0] * cols for _ in range(rows)]
    if not rows or not cols:
        return M
    pos = {g: k for k, g in enumerate(D.basis[d])}
    for col, g in enumerate(C.basis[d]):
        c = f.assignment[g]
        if c.is_generator():
            M[pos[c.gen]][col] += 1
    return M


def cone_complex(f: EZMap) -> ChainComplex:
    """``Cone(f)_d = C_{d-1} ⊕ D_d`` with ``∂(x, y) = (-∂x, f x + ∂y)``."""
    C, D = chain_complex(f.source), chain_complex(f.target)
    top = max(len(C.ranks), len(D.ranks)) + 1
    rk = lambda K, d: K.ranks[d] if 0 <= d < len(K.ranks) else 0
    ranks = [rk(C, d - 1) + rk(D, d) for d in range(top)]
    boundary = {}
    for d in range(1, top):
        a, b = rk(C, d - 1), rk(D, d)
        a2, b2 = rk(C, d - 2), rk(D, d - 1)
        M = [[0] * (a + b) for _ in range(a2 + b2)]
        dc = C.matrix(d - 1) if d - 1 >= 1 else [[0] * a for _ in range(a2)]
        fm = chain_map(f, C, D, d - 1) if d - 1 >= 0 else [[0] * a for _ in range(b2)]
        dd = D.matrix(d)
        for i in range(a2):
            for j in range(a):
                M[i][j] = -dc[i][j]
        for i in range(b2):
            for j in range(a):
                M[a2 + i][j] = fm[i][j]
            for j in range(b):
                M[a2 + i][a + j] = dd[i][j]
        boundary[d] = M
    return ChainComplex(ranks, boundary, [list(range(r)) for r in ranks])


class WEVerdict(str, Enum):
    REFUTED = "RefutedWE"
    CONSISTENT = "Consistent"


@dataclass
class WEReport:
    verdict: WEVerdict
    reason: str = ""
    bound: int = 0


def we_necessary(f: EZMap, bound: int) -> WEReport:
    """A necessary test for ``f`` to be a weak equivalence.

    ``Consistent`` only means no obstruction was found in degrees ``<= bound``.
    """
    X, Y = f.source, f.target
    comps = pi0(Y)
    where = {v: k for k, comp in enumerate(comps) for v in comp}
    hit = {}
    for comp in pi0(X):
        k = where[f.assignment[comp[0]].gen]
        if k in hit:
            return WEReport(WEVerdict.REFUTED, "π0 not injective", bound)
        hit[k] = comp
    if len(hit) != len(comps):
        return WEReport(WEVerdict.REFUTED, "π0 not surjective", bound)
    CX, CY = chain_complex(X), chain_complex(Y)
    for d in range(bound + 1):
        if homology_of(CX, d).as_tuple() != homology_of(CY, d).as_tuple():
            return WEReport(WEVerdict.REFUTED, f"H{d} groups differ", bound)
    K = cone_complex(f)
    for d in range(bound + 1):
        h = homology_of(K, d)
        if h.betti or h.torsion:
            return WEReport(WEVerdict.REFUTED, f"mapping cone has H{d} ≠ 0", bound)
    return WEReport(WEVerdict.CONSISTENT, "", bound)
