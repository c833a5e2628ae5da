"""The discrete iterated cylinder of a chain over a base, and prism decompositions."""
from __future__ import annotations

from dataclasses import dataclass, field

from .bisset import F, row_map, row_view, tau_decompose
from .ez import (
    EZMap,
    FinBiSet,
    InvariantViolation,
    LimitCone,
    NormalSimplex,
    classifying_map,
    fiber,
    find_isomorphism,
    identity_map,
    product,
    pushout,
)
from .ordinal import OrdinalMap, face, identity, shift
from .sset import terminal_map


def _fcell(m: int, tau: OrdinalMap, second: int = 0) -> NormalSimplex:
    from .yoneda import f_cell
    return f_cell(F(m), tau, second)


def f_map(tau: OrdinalMap) -> EZMap:
    """``F[n] -> F[m]`` induced by ``τ : [n] -> [m]``."""
    return classifying_map(F(tau.dom), F(tau.cod), _fcell(tau.cod, tau))


def product_map(P: LimitCone, Q: LimitCone, f: EZMap, g: EZMap) -> EZMap:
    """``f × g : P -> Q`` between binary products."""
    return Q.tuple_map([f @ P.legs[0], g @ P.legs[1]])


@dataclass
class ChainOverB:
    """``K⁽⁰⁾ -> ... -> K⁽ᵐ⁾`` over ``B``: ``structure[j] : K⁽ʲ⁾ -> B`` and
    ``maps[j-1] : K⁽ʲ⁻¹⁾ -> K⁽ʲ⁾``."""

    base: FinBiSet
    objects: list[FinBiSet]
    structure: list[EZMap]
    maps: list[EZMap]

    def __post_init__(self):
        if len(self.objects) != len(self.structure) or len(self.maps) != len(self.objects) - 1:
            raise ValueError("a chain of length m needs m+1 objects and m maps")
        for j, f in enumerate(self.maps):
            if (self.structure[j + 1] @ f).assignment != self.structure[j].assignment:
                raise ValueError(f"triangle {j} does not commute over the base")

    @property
    def length(self) -> int:
        return len(self.maps)

    def tail(self) -> "ChainOverB":
        return ChainOverB(self.base, self.objects[1:], self.structure[1:], self.maps[1:])


@dataclass
class Cylinder:
    obj: FinBiSet
    cone: LimitCone  # B × F[m]
    projection: EZMap
    iotas: list[EZMap]  # ι_j : K⁽ʲ⁾ × F[m-j] -> Cyl
    sources: list[LimitCone]  # the products K⁽ʲ⁾ × F[m-j]


def cyl_disc(f: ChainOverB) -> Cylinder:
    """``(K⁽⁰⁾ × F[m]) ⊔_{K⁽⁰⁾ × F[m-1]} Cyl(f(1))``, glued along ``e^1`` and ``ι_1 ∘ (f_1 × id)``."""
    B, m = f.base, f.length
    K0 = f.objects[0]
    BF = product(B, F(m))
    if m == 0:
        P0 = product(K0, F(0))
        to_pt = EZMap(K0, F(0), terminal_map(K0).assignment)
        proj = BF.tuple_map([f.structure[0], to_pt])
        # ι_0 : K⁽⁰⁾ × F[0] -> K⁽⁰⁾ is the first projection, an isomorphism
        return Cylinder(K0, BF, proj, [P0.legs[0]], [P0])
    sub = cyl_disc(f.tail())
    e1 = f_map(shift(1, m - 1, m))
    Pm = product(K0, F(m))
    Pm1 = product(K0, F(m - 1))
    inc = product_map(Pm1, Pm, identity_map(K0), e1)
    attach = sub.iotas[0] @ product_map(Pm1, sub.sources[0], f.maps[0], identity_map(F(m - 1)))
    po = pushout(inc, attach)
    left = BF.tuple_map([f.structure[0] @ Pm.legs[0], Pm.legs[1]])
    right = product_map(sub.cone, BF, identity_map(B), e1) @ sub.projection
    proj = po.induced([left, right])
    iotas = [po.legs[0]] + [po.legs[1] @ i for i in sub.iotas]
    return Cylinder(po.obj, BF, proj, iotas, [Pm] + sub.sources)


def endpoint(c: Cylinder, i: int):
    """``Cyl|_{i}``: the fiber over the vertex ``i`` of ``F[m]``, with its map to ``B``."""
    q = c.cone.legs[1] @ c.projection
    fb = fiber(q, i)
    to_B = c.cone.legs[0] @ c.projection @ fb.legs[0]
    return fb, to_B


@dataclass
class FiberReport:
    holds: bool
    checked: int
    mismatches: list = field(default_factory=list)
    endpoints: bool = True


def _ic(c: Cylinder, j: int, k: NormalSimplex, tau2: OrdinalMap) -> NormalSimplex:
    S = c.sources[j]
    mj = S.factors[1].max_dims()[0]
    return c.iotas[j].map_cell(S.tuple_cell([k, _fcell(mj, tau2, k.level[1])]))


def fiber_formula_check(f: ChainOverB, top: int = 3) -> FiberReport:
    """``Cyl(f)_τ ≅ K⁽τ⁽⁰⁾⁾_n`` over ``B_n`` for every ``τ : [n] -> [m]``, ``n <= top``.

    The comparison map is ``k ↦ ι_j(k, τ″)`` with ``j = τ(0)`` and ``τ = e^j ∘ τ″``.
    """
    c = cyl_disc(f)
    m = f.length
    checked, bad = 0, []
    for n in range(top + 1):
        pieces = tau_decompose(c.projection, c.cone, n)
        Rc = row_view(c.obj, n)
        for tau, (piece, inc, to_B) in pieces.items():
            checked += 1
            j = tau(0)
            tau2 = OrdinalMap(tuple(v - j for v in tau.values), m - j)
            K = f.objects[j]
            Rk = row_view(K, n)
            back = {cc.gen: g for g, cc in enumerate(inc.assignment)}
            assign, ok = [], True
            for g in Rk.obj.generators:
                k = Rk.from_row(Rk.obj.cell(g))
                rc = Rc.to_row(_ic(c, j, k, tau2))
                if rc.gen not in back:
                    ok = False
                    break
                assign.append(NormalSimplex(rc.epis, back[rc.gen]))
            if ok:
                phi = EZMap(Rk.obj, piece, assign)
                qK = row_map(f.structure[j], n)
                ok = phi.is_iso() and (to_B @ phi).assignment == qK.assignment
                if ok:
                    phi.validate()
            if not ok:
                bad.append(tau)
    ends = True
    for i in range(m + 1):
        fb, to_B = endpoint(c, i)
        if find_isomorphism(f.objects[i], fb.obj, over=(f.structure[i], to_B)) is None:
            ends = False
    return FiberReport(not bad and ends, checked, bad, ends)


# ---------------------------------------------------------------------------
# prisms

def gamma_eps_maps(n: int, i: int) -> tuple[tuple[OrdinalMap, OrdinalMap], tuple[OrdinalMap, OrdinalMap]]:
    """``γ^i : [n+1] -> [n]×[1]`` and ``ε^i : [n] -> [n]×[1]`` as component pairs."""
    if not 0 <= i <= n:
        raise ValueError(f"need 0 <= i <= n, got i={i}, n={n}")
    g0 = tuple(j if j <= i else j - 1 for j in range(n + 2))
    g1 = tuple(0 if j <= i else 1 for j in range(n + 2))
    e1 = tuple(0 if j <= i else 1 for j in range(n + 1))
    gamma = (OrdinalMap(g0, n), OrdinalMap(g1, 1))
    eps = (identity(n), OrdinalMap(e1, 1))
    return gamma, eps


@dataclass
class Prism:
    n: int
    pushout: FinBiSet
    comparison: EZMap  # iterated pushout -> F[n] × F[1]
    counts_match: bool
    searched: EZMap | None


def prism_decomposition(n: int, search: bool = True) -> Prism:
    """``F[n] × F[1] ≅ F[n+1] ⊔_{F[n]} ... ⊔_{F[n]} F[n+1]`` (``n+1`` copies glued by ``ε^i``)."""
    P = product(F(n), F(1))
    gammas = []
    for i in range(n + 1):
        (g0, g1), _ = gamma_eps_maps(n, i)
        gammas.append(P.tuple_map([f_map(g0), f_map(g1)]))
    obj = F(n + 1)
    legs = [identity_map(obj)]  # copy i -> current pushout
    for i in range(n):
        d = f_map(face(i + 1, n + 1))
        po = pushout(legs[i] @ d, d)
        legs = [po.legs[0] @ l for l in legs] + [po.legs[1]]
        obj = po.obj
    # induced map, generator by generator, from whichever copy hits it first
    assign: list = [None] * len(obj)
    for i, leg in enumerate(legs):
        for g, c in enumerate(leg.assignment):
            if c.is_generator() and assign[c.gen] is None:
                assign[c.gen] = gammas[i].assignment[g]
    comp = EZMap(obj, P.obj, assign)
    comp.validate()
    for i, leg in enumerate(legs):
        if (comp @ leg).assignment != gammas[i].assignment:
            raise InvariantViolation("γ maps do not glue along ε")
    counts = all(len(obj.levels((k, 0))) == len(P.obj.levels((k, 0))) for k in range(5))
    found = find_isomorphism(obj, P.obj) if search else None
    if not comp.is_iso() or (search and found is None):
        raise InvariantViolation("prism decomposition is not an isomorphism")
    return Prism(n, obj, comp, counts, found)
