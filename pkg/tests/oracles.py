"""Independent brute-force oracles.

Nothing here imports the package: simplices are plain vertex tuples and maps
are plain value tuples.
"""
from __future__ import annotations

from itertools import combinations, combinations_with_replacement, product


def monotone_maps(n: int, m: int) -> list[tuple[int, ...]]:
    """Monotone maps ``[n] -> [m]`` as value tuples."""
    return list(combinations_with_replacement(range(m + 1), n + 1))


def compose(g: tuple, f: tuple) -> tuple:
    return tuple(g[v] for v in f)


def coface(i: int, n: int) -> tuple:
    return tuple(k for k in range(n + 1) if k != i)


def opposite(t: tuple, m: int) -> tuple:
    return tuple(m - v for v in reversed(t))


def twist(t: tuple, m: int) -> tuple:
    return opposite(t, m) + tuple(m + 1 + v for v in t)


# -- ordered simplicial complexes inside [m] -------------------------------

def closure(facets) -> set[frozenset]:
    out = set()
    for f in facets:
        f = sorted(f)
        for k in range(1, len(f) + 1):
            out.update(frozenset(c) for c in combinations(f, k))
    return out


def simplices(facets, n: int) -> list[tuple]:
    """All ``n``-simplices, degenerate ones included, as non-decreasing tuples."""
    faces = closure(facets)
    verts = sorted({v for f in faces for v in f})
    return [t for t in combinations_with_replacement(verts, n + 1) if frozenset(t) in faces]


def nondegenerate(facets, n: int) -> int:
    return sum(1 for f in closure(facets) if len(f) == n + 1)


def standard_facets(m: int):
    return [range(m + 1)]


def boundary_facets(m: int):
    return [coface(i, m) for i in range(m + 1)]


def horn_facets(m: int, k: int):
    return [coface(i, m) for i in range(m + 1) if i != k]


def _valid(f: dict, S, faces) -> bool:
    vals = [f[v] for v in sorted(S)]
    return all(a <= b for a, b in zip(vals, vals[1:])) and frozenset(vals) in faces


def lifts_against(facets, n: int, sub_maximal: list[tuple]) -> bool:
    """Does ``X -> pt`` lift against ``K ↪ Δ[n]``?

    ``K`` is given by its maximal simplices, ``X`` by its facets; maps into an
    ordered complex are vertex maps that are monotone on every simplex.
    """
    faces = closure(facets)
    verts = sorted({v for f in faces for v in f})
    covered = sorted({v for s in sub_maximal for v in s})
    missing = [v for v in range(n + 1) if v not in covered]
    for vals in product(verts, repeat=len(covered)):
        f = dict(zip(covered, vals))
        if not all(_valid(f, s, faces) for s in sub_maximal):
            continue
        ok = False
        for extra in product(verts, repeat=len(missing)):
            g = {**f, **dict(zip(missing, extra))}
            if _valid(g, range(n + 1), faces):
                ok = True
                break
        if not ok:
            return False
    return True


def kan_to_point(facets, bound: int) -> bool:
    return all(
        lifts_against(facets, n, horn_facets(n, k))
        for n in range(1, bound + 1) for k in range(n + 1)
    )


def trivial_to_point(facets, bound: int) -> bool:
    if not lifts_against(facets, 0, []):
        return False
    return all(lifts_against(facets, n, boundary_facets(n)) for n in range(1, bound + 1))


# -- integer homology of ordered complexes ---------------------------------

def homology_oracle(facets, d: int) -> tuple[int, tuple]:
    """``(betti, torsion)`` of ``H_d`` computed with sympy from oriented faces."""
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form

    faces = closure(facets)
    by_dim: dict[int, list] = {}
    for f in faces:
        by_dim.setdefault(len(f) - 1, []).append(tuple(sorted(f)))
    for v in by_dim.values():
        v.sort()

    def bd(k):
        rows, cols = by_dim.get(k - 1, []), by_dim.get(k, [])
        pos = {s: i for i, s in enumerate(rows)}
        M = [[0] * len(cols) for _ in rows]
        for j, s in enumerate(cols):
            for i in range(len(s)):
                M[pos[s[:i] + s[i + 1:]]][j] += (-1) ** i
        return M

    def rank(M):
        return Matrix(M).rank() if M and M[0] else 0

    n = len(by_dim.get(d, []))
    out = rank(bd(d)) if d > 0 else 0
    M = bd(d + 1)
    inn = rank(M)
    tors = ()
    if inn:
        S = smith_normal_form(Matrix(M), domain=ZZ)
        diag = [abs(S[i, i]) for i in range(min(S.shape))]
        tors = tuple(sorted(x for x in diag if x > 1))
    return n - out - inn, tors


# -- categories as plain tables ---------------------------------------------

def chains(objects, arrows, n: int) -> list[tuple]:
    """Composable strings ``(a_1, ..., a_n)``; for ``n = 0`` the objects."""
    if n == 0:
        return [(x,) for x in objects]
    out = [(a,) for a in arrows]
    for _ in range(n - 1):
        out = [c + (a,) for c in out for a in arrows if arrows[c[-1]][1] == arrows[a][0]]
    return out


def chain_count(C, n: int) -> int:
    arrows = {a.name: (a.src, a.tgt) for a in C.arrows}
    return len(chains(list(C.objects), arrows, n))


def elements_count(C, sets: dict, n: int, contravariant: bool = False) -> int:
    arrows = {a.name: (a.src, a.tgt) for a in C.arrows}
    total = 0
    for c in chains(list(C.objects), arrows, n):
        if n == 0:
            anchor = c[0]
        else:
            anchor = arrows[c[-1]][1] if contravariant else arrows[c[0]][0]
        total += len(sets[anchor])
    return total


def is_discrete_opfibration(G) -> bool:
    """Unique lifts of arrows out of each object of the source category."""
    C, D = G.source, G.target
    for c in C.objects:
        for a in D.arrows:
            if a.src != G.on_objects[c]:
                continue
            hits = [u for u in C.arrows if u.src == c and G.on_arrows[u.name] == a.name]
            if len(hits) != 1:
                return False
    return True
