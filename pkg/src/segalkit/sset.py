"""Finite simplicial sets: standard cells, limits/colimits, π₀, hom sets, skeleta."""
from __future__ import annotations


from scipy.cluster.hierarchy import DisjointSet

from .ez import (
    EZMap,
    EZObject,
    FinSSet,
    NormalSimplex,
    SSetMap,
    coproduct,
    empty,
    fiber,
    find_isomorphism,
    hom_enum,
    identity_map,
    isomorphic,
    point,
    product,
    pullback,
    pushout,
    representable,
    restrict,
)
from .ordinal import OrdinalMap

__all__ = [
    "FinSSet", "NormalSimplex", "SSetMap", "standard", "boundary", "horn", "levels",
    "apply", "product", "pushout", "coproduct", "pullback", "fiber", "pi0", "hom_enum",
    "map_space_level", "map_space_over", "homotopic_over", "skeleton", "vertex_map",
    "isomorphic", "find_isomorphism", "identity_map", "point", "empty", "terminal_map",
]


def standard(n: int) -> FinSSet:
    """Δ[n]; generator labels are the vertex strings of the faces."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return representable((n,))


def boundary(n: int) -> FinSSet:
    if n < 1:
        raise ValueError("∂Δ[n] needs n >= 1")
    D = standard(n)
    keep = [g for g in D.generators if D.dims[g][0] < n]
    return restrict(D, keep)[0]


def horn(n: int, k: int) -> FinSSet:
    """Λ^k[n]: faces of Δ[n] that miss some vertex other than ``k``."""
    if n < 1 or not 0 <= k <= n:
        raise ValueError(f"no horn Λ^{k}[{n}]")
    D = standard(n)
    full = set(range(n + 1))
    keep = [g for g in D.generators if set(D.arrows[g][0].values) | {k} != full]
    return restrict(D, keep)[0]


def levels(X: EZObject, n) -> list[NormalSimplex]:
    return X.levels((n,) if isinstance(n, int) else n)


def apply(X: EZObject, tau, s: NormalSimplex) -> NormalSimplex:
    taus = (tau,) if isinstance(tau, OrdinalMap) else tuple(tau)
    return X.apply(taus, s)


def terminal_map(X: EZObject) -> EZMap:
    pt = point(X.axes)
    return EZMap(X, pt, [NormalSimplex(_const_epis(X.dims[g]), 0) for g in X.generators])


def _const_epis(dims):
    return tuple(OrdinalMap((0,) * (d + 1), 0) for d in dims)


def vertex_map(X: EZObject, x: int) -> EZMap:
    """``pt -> X`` picking the vertex generator ``x``."""
    pt = point(X.axes)
    return EZMap(pt, X, [X.cell(x)])


def pi0(X: EZObject) -> list[list[int]]:
    """Connected components as sorted lists of vertex generators, ordered by representative."""
    ds = DisjointSet(X.vertices())
    for g in X.generators:
        if any(X.dims[g]):
            vs = [c.gen for c in X.vertex_cells(X.cell(g))]
            for v in vs[1:]:
                ds.merge(vs[0], v)
    comps = [sorted(s) for s in ds.subsets()]
    return sorted(comps)


def component_of(X: EZObject) -> dict[int, int]:
    """Vertex -> smallest vertex of its component."""
    return {v: comp[0] for comp in pi0(X) for v in comp}


def skeleton(X: EZObject, n: int) -> EZObject:
    """The subobject generated by generators of total dimension ≤ n."""
    return restrict(X, [g for g in X.generators if sum(X.dims[g]) <= n])[0]


def map_space_level(Y: EZObject, X: EZObject, n: int) -> list[EZMap]:
    """``Map(Y, X)_n = Hom(Y × Δ[n], X)``."""
    P = product(Y, _standard_like(Y, n))
    return list(hom_enum(P.obj, X))


def map_space_over(pY: EZMap, pX: EZMap, n: int) -> list[EZMap]:
    """``Map_Z(Y, X)_n``: maps ``Y × Δ[n] -> X`` over ``Z`` (``pY: Y -> Z``, ``pX: X -> Z``)."""
    Y = pY.source
    P = product(Y, _standard_like(Y, n))
    b = pY @ P.pr1
    return list(hom_enum(P.obj, pX.source, over=(pX, b)))


def _standard_like(Y: EZObject, n: int) -> EZObject:
    if Y.axes == 1:
        return standard(n)
    return representable((0, n))


def endpoint_restriction(h: EZMap, cone, e: int) -> EZMap:
    """``h|_e`` for ``h : X × Δ[1] -> W`` where ``cone`` is the product cone."""
    X, I = cone.factors
    inc = cone.tuple_map([identity_map(X), _const_to_vertex(X, I, e)])
    return h @ inc


def _const_to_vertex(X: EZObject, I: EZObject, e: int) -> EZMap:
    # I is Δ[1] (or □[0,1]); its vertex generators are labelled by value
    v = next(g for g in I.vertices() if I.arrows[g][-1].values == (e,))
    return EZMap(X, I, [NormalSimplex(_const_epis(X.dims[g]), v) for g in X.generators])


def homotopic_over(pX: EZMap, qY: EZMap, f: EZMap, g: EZMap) -> bool:
    """Are ``f, g : X -> Y`` over ``Z`` joined by a zigzag of homotopies over ``Z``?

    ``pX: X -> Z`` and ``qY: Y -> Z`` are the structure maps.
    """
    for m in (f, g):
        if (qY @ m).assignment != pX.assignment:
            raise ValueError("maps do not commute with the projections to Z")
    X = pX.source
    verts = list(hom_enum(X, qY.source, over=(qY, pX)))
    index = {m.assignment: k for k, m in enumerate(verts)}
    ds = DisjointSet(range(len(verts)))
    I = _standard_like(X, 1)
    cone = product(X, I)
    b = pX @ cone.pr1
    for h in hom_enum(cone.obj, qY.source, over=(qY, b)):
        a0 = endpoint_restriction(h, cone, 0).assignment
        a1 = endpoint_restriction(h, cone, 1).assignment
        ds.merge(index[a0], index[a1])
    return ds.connected(index[f.assignment], index[g.assignment])
