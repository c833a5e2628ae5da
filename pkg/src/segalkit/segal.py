"""Segal maps, mapping sets, the homotopy category and completeness.

Discrete inputs (all generators in bidegree ``(k, 0)``) are decided exactly:
there a trivial fibration of rows is a levelwise bijection.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .bisset import is_discrete, row, row_operator, row_view
from .category import Arrow, CategoryError, FinCat
from .ez import EZMap, FinBiSet, InvariantViolation, NormalSimplex, limit
from .ordinal import OrdinalMap, degeneracy, identity
from .sset import pi0

EXACT = "exact-discrete"


class NotDiscrete(ValueError):
    pass


class SegalFailure(ValueError):
    pass


def _op(values, n):
    return OrdinalMap(tuple(values), n)


def segal_map(X: FinBiSet, n: int):
    """``φ_n : X_n -> X_1 ×_{X_0} ... ×_{X_0} X_1`` along the spine edges.

    Returns ``(φ_n, cone)`` with ``cone`` the iterated fiber product.
    """
    if n < 2:
        raise ValueError("Segal maps start at n = 2")
    R1 = row(X, 1)
    head = row_operator(X, _op((1,), 1))
    tail = row_operator(X, _op((0,), 1))

    def compatible(cells):
        return all(head.map_cell(a) == tail.map_cell(b) for a, b in zip(cells, cells[1:]))

    cone = limit([R1] * n, compatible)
    spine = [row_operator(X, _op((i, i + 1), n)) for i in range(n)]
    Rn = row(X, n)
    phi = EZMap(Rn, cone.obj, [
        cone.tuple_cell([s.map_cell(Rn.cell(g)) for s in spine]) for g in Rn.generators
    ])
    return phi, cone


@dataclass
class Verdict:
    holds: bool
    tier: str
    anchor: str
    detail: dict = field(default_factory=dict)


def _require_discrete(X: FinBiSet):
    if not is_discrete(X):
        raise NotDiscrete("the exact tier needs a discrete bisimplicial set")


def check_segal_discrete(X: FinBiSet, bound: int) -> Verdict:
    _require_discrete(X)
    sizes = {}
    for n in range(2, bound + 1):
        phi, cone = segal_map(X, n)
        sizes[n] = (len(phi.source.levels((0,))), len(cone.obj.levels((0,))))
        if not phi.is_iso():
            return Verdict(False, EXACT, "E:Segal(b)", {"n": n, "sizes": sizes})
    return Verdict(True, EXACT, "E:Segal(b)", {"sizes": sizes})


def edges(X: FinBiSet) -> list[NormalSimplex]:
    return X.levels((1, 0))


def source(X: FinBiSet, e: NormalSimplex) -> int:
    return X.apply((_op((0,), 1), identity(0)), e).gen


def target(X: FinBiSet, e: NormalSimplex) -> int:
    return X.apply((_op((1,), 1), identity(0)), e).gen


def _vertex(X, x):
    if X.dims[x] != (0, 0):
        raise ValueError(f"{x} is not a vertex")


def mapping_set(X: FinBiSet, x: int, y: int) -> list[NormalSimplex]:
    """``map_X(x, y)``: the edges from ``x`` to ``y``."""
    _vertex(X, x)
    _vertex(X, y)
    return [e for e in edges(X) if source(X, e) == x and target(X, e) == y]


def identity_elt(X: FinBiSet, x: int) -> NormalSimplex:
    _vertex(X, x)
    return X.apply((degeneracy(0, 0), identity(0)), X.cell(x))


def edge_name(X: FinBiSet, e: NormalSimplex) -> str:
    if e.is_generator():
        return X.labels[e.gen]
    return f"s0({X.labels[e.gen]})"


@dataclass
class HomotopyCategory:
    category: FinCat
    arrow_of: dict  # arrow name -> edge
    object_of: dict  # object name -> vertex generator


def homotopy_category(X: FinBiSet, bound: int = 3) -> HomotopyCategory:
    """``Ho X``: composition through the inverse of ``φ_2`` followed by ``δ_{02}``."""
    v = check_segal_discrete(X, min(bound, 2))
    if not v.holds:
        raise SegalFailure("Segal condition fails")
    obj_name = {x: X.labels[x] for x in X.vertices()}
    names = {e: edge_name(X, e) for e in edges(X)}
    triangles = {}
    d01, d12, d02 = (_op(p, 2) for p in ((0, 1), (1, 2), (0, 2)))
    for s in X.levels((2, 0)):
        key = (X.apply((d01, identity(0)), s), X.apply((d12, identity(0)), s))
        if key in triangles:
            raise InvariantViolation("φ_2 is not injective")
        triangles[key] = X.apply((d02, identity(0)), s)
    comp = {}
    for a in edges(X):
        for b in edges(X):
            if target(X, a) != source(X, b):
                continue
            c = triangles.get((a, b))
            if c is None:
                raise InvariantViolation("φ_2 is not surjective")
            comp[(names[b], names[a])] = names[c]
    arrows = [Arrow(names[e], obj_name[source(X, e)], obj_name[target(X, e)]) for e in edges(X)]
    ids = {obj_name[x]: names[identity_elt(X, x)] for x in X.vertices()}
    try:
        C = FinCat([obj_name[x] for x in X.vertices()], arrows, ids, comp, "Ho")
    except CategoryError as exc:
        raise InvariantViolation(f"homotopy category laws fail: {exc}") from exc
    return HomotopyCategory(C, {n: e for e, n in names.items()}, {n: x for x, n in obj_name.items()})


def heq_subset(X: FinBiSet) -> list[NormalSimplex]:
    """Edges invertible in ``Ho X``."""
    H = homotopy_category(X)
    return sorted(H.arrow_of[a.name] for a in H.category.arrows if H.category.is_invertible(a.name))


def is_complete_discrete(X: FinBiSet) -> Verdict:
    heq = heq_subset(X)
    degenerate = {identity_elt(X, x) for x in X.vertices()}
    detail = {"heq": len(heq), "X0": len(degenerate)}
    return Verdict(set(heq) == degenerate, EXACT, "E:css(c)", detail)


def fully_faithful_discrete(f: EZMap) -> Verdict:
    X, Y = f.source, f.target
    for Z in (X, Y):
        if not check_segal_discrete(Z, 2).holds:
            raise SegalFailure("Segal condition fails")
    for x in X.vertices():
        for y in X.vertices():
            fx, fy = f.map_cell(X.cell(x)).gen, f.map_cell(X.cell(y)).gen
            img = [f.map_cell(e) for e in mapping_set(X, x, y)]
            if len(set(img)) != len(img) or set(img) != set(mapping_set(Y, fx, fy)):
                return Verdict(False, EXACT, "E:objmap(d)", {"pair": (x, y)})
    return Verdict(True, EXACT, "E:objmap(d)")


@dataclass
class PrimeComponents:
    x1: list
    x3: list
    middle: list
    heq: list
    tier: str

    @property
    def matches(self) -> bool:
        return sorted(set(self.middle)) == sorted(self.heq)


def heq_component_closure(X: FinBiSet) -> list[NormalSimplex]:
    """``X′_1``: edges in a component of ``X_1`` that contains a degenerate edge."""
    R = row_view(X, 1)
    degenerate = {R.to_row(identity_elt(X, x)).gen for x in X.vertices()}
    keep = []
    for comp in pi0(R.obj):
        if degenerate & set(comp):
            keep.extend(comp)
    return sorted(R.from_row(R.obj.cell(g)) for g in keep)


def prime_components(X: FinBiSet) -> PrimeComponents:
    """``X′_3 = δ_{02}^{-1}(X′_1) ∩ δ_{13}^{-1}(X′_1)`` and its middle edges."""
    tier = EXACT if is_discrete(X) else "row-π₀ level"
    x1 = set(heq_component_closure(X))
    d02, d13, d12 = (_op(p, 3) for p in ((0, 2), (1, 3), (1, 2)))
    x3, middle = [], []
    for s in X.levels((3, 0)):
        if X.apply((d02, identity(0)), s) in x1 and X.apply((d13, identity(0)), s) in x1:
            x3.append(s)
            middle.append(X.apply((d12, identity(0)), s))
    return PrimeComponents(sorted(x1), x3, sorted(set(middle)), heq_subset(X), tier)
