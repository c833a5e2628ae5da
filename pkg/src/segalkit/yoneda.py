"""Undercategories, the auxiliary object x\\~X, category of elements and the
discrete Yoneda checks."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .bisset import (
    CONE,
    F,
    MU,
    box,
    disc,
    reindexing,
    twist_projection,
)
from .category import CategoryError, FinCat, Nerve, SetFunctor, disc_nerve, nerve_data
from .ez import (
    EZMap,
    EZObject,
    FinBiSet,
    FinSSet,
    InvariantViolation,
    LimitCone,
    NormalSimplex,
    classifying_map,
    hom_enum,
    product,
    restrict,
)
from .lifting import check_left_fibration
from .ordinal import OrdinalMap, compose, epi_mono_factor, identity, shift
from .segal import EXACT, check_segal_discrete, homotopy_category
from .virtual import Materialized, VirtualObject


def _const(n: int, m: int = 0) -> OrdinalMap:
    return OrdinalMap((0,) * (n + 1), m)


def first_values(obj: EZObject, cell: NormalSimplex) -> tuple[int, ...]:
    """First-axis vertex sequence of a cell of ``F[k]`` or ``□[k,l]``."""
    return compose(obj.arrows[cell.gen][0], cell.epis[0]).values


def second_map(obj: EZObject, cell: NormalSimplex) -> OrdinalMap:
    return compose(obj.arrows[cell.gen][1], cell.epis[1])


def f_cell(Fn: FinBiSet, tau: OrdinalMap, second: int) -> NormalSimplex:
    """The cell of ``F[n]`` at bidegree ``(k, second)`` classified by ``τ:[k]->[n]``."""
    epi, mono = epi_mono_factor(tau)
    idx = Fn.__dict__.setdefault("_arrow_index", {a: g for g, a in enumerate(Fn.arrows)})
    return NormalSimplex((epi, _const(second)), idx[(mono, identity(0))])


def _vertex_cell(obj, dims, value_gen):
    return NormalSimplex(tuple(_const(d) for d in dims), value_gen)


def _check_vertex(X, x):
    if X.dims[x] != (0,) * X.axes:
        raise ValueError(f"{x} is not a vertex")


# ---------------------------------------------------------------------------
# x\X

class UnderLevels:
    """``x\\X``: level ``(n, m)`` is the set of maps ``F[1] × □[n,m] -> X``
    sending the 0-end to ``x``, recorded by their generator assignments."""

    def __init__(self, X: FinBiSet, x: int):
        _check_vertex(X, x)
        self.base = X
        self.x = x
        self.F1 = F(1)
        self._cones: dict = {}
        self.virtual = VirtualObject(2, self._level, self._act, name=f"under[{x}]")

    def cone(self, dims) -> LimitCone:
        dims = tuple(dims)
        if dims not in self._cones:
            self._cones[dims] = product(self.F1, box(*dims))
        return self._cones[dims]

    def _level(self, dims):
        P = self.cone(dims)
        fixed = {}
        for h in P.obj.generators:
            c = P.legs[0].map_cell(P.obj.cell(h))
            if first_values(self.F1, c) == (0,) * (P.obj.dims[h][0] + 1):
                fixed[h] = _vertex_cell(self.base, P.obj.dims[h], self.x)
        return [a.assignment for a in hom_enum(P.obj, self.base, fixed=fixed)]

    def along(self, taus, dims_from):
        """``id × τ : F[1] × □[n′,m′] -> F[1] × □[n,m]``."""
        dims_to = tuple(t.dom for t in taus)
        src, tgt = self.cone(dims_to), self.cone(dims_from)
        B = tgt.factors[1]
        t = classifying_map(src.factors[1], B, B.apply(tuple(taus), B.cell(len(B) - 1)))
        return tgt.tuple_map([src.legs[0], t @ src.legs[1]])

    def _act(self, taus, alpha):
        dims_from = tuple(t.cod for t in taus)
        P = self.cone(dims_from)
        a = EZMap(P.obj, self.base, alpha)
        return (a @ self.along(taus, dims_from)).assignment

    def level(self, n: int, m: int) -> list:
        return self.virtual.level((n, m))

    def identity_cell(self) -> tuple:
        """``id_x``: the constant map at ``x`` in level ``(0, 0)``."""
        P = self.cone((0, 0))
        return tuple(_vertex_cell(self.base, P.obj.dims[h], self.x) for h in P.obj.generators)

    def end(self, alpha, dims, e: int = 1) -> NormalSimplex:
        """Evaluation at the ``e``-end: a cell of ``X`` at ``dims``."""
        P = self.cone(dims)
        Fc = _vertex_cell(self.F1, dims, 0 if e == 0 else 1)
        Bc = P.factors[1].cell(len(P.factors[1]) - 1)
        return EZMap(P.obj, self.base, alpha).map_cell(P.tuple_cell([Fc, Bc]))

    def materialize(self, bound: int) -> "UnderTruncation":
        return UnderTruncation(self, bound)


@dataclass
class UnderTruncation:
    """The part of ``x\\X`` of total degree ``<= bound``, with its projection to ``X``."""

    under: UnderLevels
    bound: int
    data: Materialized = field(init=False)
    projection: EZMap = field(init=False)

    def __post_init__(self):
        self.data = self.under.virtual.materialize(self.bound)
        obj = self.data.obj
        self.projection = EZMap(obj, self.under.base, [
            self.under.end(self.data.keys[g][1], obj.dims[g]) for g in obj.generators
        ])

    @property
    def obj(self):
        return self.data.obj

    def id_cell(self) -> NormalSimplex:
        return self.data.normalize(self.under.identity_cell(), (0, 0))


def under(X: FinBiSet, x: int) -> UnderLevels:
    return UnderLevels(X, x)


def poset_map(cone: LimitCone, factors: Sequence[int], fn: Callable, target: FinBiSet) -> EZMap:
    """The map ``cone.obj -> F[n]`` induced on first-axis vertices by ``fn``."""
    obj = cone.obj
    n = target.max_dims()[0]
    out = []
    for g in obj.generators:
        cells = [cone.legs[k].map_cell(obj.cell(g)) for k in factors]
        seqs = [first_values(cone.factors[k], c) for k, c in zip(factors, cells)]
        tau = OrdinalMap(tuple(fn(*vals) for vals in zip(*seqs)), n)
        out.append(f_cell(target, tau, obj.dims[g][1]))
    return EZMap(obj, target, out)


@dataclass
class RetractionReport:
    holds: bool
    checked: int
    identity_ok: bool
    section_ok: bool
    a_to_zero: bool


def under_retraction(X: FinBiSet, x: int, top: int = 2) -> RetractionReport:
    """``r : x\\X -> id_x\\(x\\X)`` by precomposition with ``m(s,t) = st``, verified
    on all levels ``(n, m)`` with ``n, m <= top``."""
    U = under(X, x)
    F1 = U.F1
    # m sends A = (F[1]×{0}) ∪ ({0}×F[1]) to 0
    sq = product(F1, F1)
    mm = poset_map(sq, (0, 1), lambda s, t: s * t, F1)
    a_zero = all(
        first_values(F1, mm.map_cell(sq.obj.cell(g))) == (0,)
        for g in sq.obj.vertices()
        if 0 in [first_values(F1, leg.map_cell(sq.obj.cell(g)))[0] for leg in sq.legs]
    )
    checked, id_ok, sec_ok = 0, True, True
    idx = U.identity_cell()
    for n in range(top + 1):
        for m in range(top + 1):
            P = U.cone((n, m))
            Q = product(F1, F1, box(n, m))
            mq = poset_map(Q, (0, 1), lambda s, t: s * t, F1)
            pull = P.tuple_map([mq, Q.legs[2]])
            # the outer coordinate s set to 1, and to 0
            ends = {}
            for e in (0, 1):
                s_e = EZMap(P.obj, F1, [_vertex_cell(F1, P.obj.dims[h], e) for h in P.obj.generators])
                ends[e] = Q.tuple_map([s_e, P.legs[0], P.legs[1]])
            for alpha in U.level(n, m):
                r = EZMap(P.obj, X, alpha) @ pull
                checked += 1
                if (r @ ends[1]).assignment != alpha:
                    sec_ok = False
                const = tuple(_vertex_cell(X, P.obj.dims[h], x) for h in P.obj.generators)
                if (r @ ends[0]).assignment != const:
                    sec_ok = False
            if (n, m) == (0, 0):
                r_id = EZMap(P.obj, X, idx) @ pull
                id_ok = all(c == _vertex_cell(X, Q.obj.dims[h], x) for h, c in enumerate(r_id.assignment))
    return RetractionReport(id_ok and sec_ok and a_zero, checked, id_ok, sec_ok, a_zero)


# ---------------------------------------------------------------------------
# x\~X and the maps ψ′, ψ″

@dataclass
class TildeUnder:
    """``{x} ×_{X_0} X_{n+1}`` at level ``n``, as a subobject of ``τ′^* X``."""

    base: FinBiSet
    x: int
    obj: FinBiSet
    cells: list  # generator -> cell of X at (n+1, m)
    projection: EZMap  # to X, restricting along e^1

    def cell_of(self, c: NormalSimplex) -> NormalSimplex:
        n, m = self.obj.dims[c.gen]
        z = self.cells[c.gen]
        return self.base.apply((CONE.arrow(c.epis[0]), c.epis[1]), z)


def tilde_under(X: FinBiSet, x: int, top: int | None = None) -> TildeUnder:
    """With ``top`` only generators of total degree ``<= top`` are kept."""
    _check_vertex(X, x)
    R = reindexing(CONE, X)
    e0 = lambda n: OrdinalMap((0,), n + 1)
    keep = []
    for g in R.obj.generators:
        n, m = R.obj.dims[g]
        if top is not None and n + m > top:
            continue
        z = R.base_cell(R.obj.cell(g))
        if X.apply((e0(n), identity(m)), z) == _vertex_cell(X, (0, m), x):
            keep.append(g)
    obj, inc = restrict(R.obj, keep)
    cells = [R.base_cell(R.obj.cell(g)) for g in keep]
    proj = []
    for g in obj.generators:
        n, m = obj.dims[g]
        proj.append(X.apply((shift(1, n, n + 1), identity(m)), cells[g]))
    return TildeUnder(X, x, obj, cells, EZMap(obj, X, proj))


def psi_prime(T: TildeUnder, U: UnderLevels):
    """``ψ′`` via ``(i, j) ↦ (i + j) j``; returns ``{generator: cell of x\\X}``."""
    X = T.base
    out = {}
    for g in T.obj.generators:
        n, m = T.obj.dims[g]
        z = T.cells[g]
        P = U.cone((n, m))
        B = P.factors[1]
        assign = []
        for h in P.obj.generators:
            c = P.obj.cell(h)
            s = first_values(U.F1, P.legs[0].map_cell(c))
            bc = P.legs[1].map_cell(c)
            i = first_values(B, bc)
            tau = OrdinalMap(tuple((a + b) * b for a, b in zip(i, s)), n + 1)
            assign.append(X.apply((tau, second_map(B, bc)), z))
        out[g] = tuple(assign)
    return out


@dataclass
class TwistFiber:
    """``{x} ×_{X^op} M(X)`` as a subobject of ``M(X)``, with its map to ``X``."""

    obj: FinBiSet
    inclusion: EZMap
    projection: EZMap


def twist_fiber(X: FinBiSet, x: int, top: int | None = None) -> TwistFiber:
    tp = twist_projection(X, top)
    M = tp.twisted
    keep = []
    for g in M.obj.generators:
        n, m = M.obj.dims[g]
        w = M.base_cell(M.obj.cell(g))
        left = X.apply((shift(0, n, 2 * n + 1), identity(m)), w)
        if left == _vertex_cell(X, (n, m), x):
            keep.append(g)
    obj, inc = restrict(M.obj, keep)
    right = tp.cone.legs[1] @ tp.map @ inc
    return TwistFiber(obj, inc, right)


def _r_map(n: int) -> OrdinalMap:
    return OrdinalMap((0,) * (n + 1) + tuple(range(1, n + 2)), n + 1)


def psi_dprime(T: TildeUnder, Fib: TwistFiber, top: int | None = None) -> EZMap:
    """``ψ″`` via ``r(i) = 0`` for ``i <= n`` and ``r(i + n + 1) = i + 1``."""
    X = T.base
    M = reindexing(MU, X, top)
    back = {c.gen: k for k, c in enumerate(Fib.inclusion.assignment)}
    out = []
    for g in T.obj.generators:
        n, m = T.obj.dims[g]
        c = M.normalize(X.apply((_r_map(n), identity(m)), T.cells[g]), n)
        out.append(NormalSimplex(c.epis, back[c.gen]))
    return EZMap(T.obj, Fib.obj, out)


@dataclass
class TwistReport:
    level0_identity: bool
    over_x_prime: bool
    over_x_dprime: bool
    section: bool
    injective: bool

    @property
    def holds(self) -> bool:
        return all((self.level0_identity, self.over_x_prime, self.over_x_dprime, self.section, self.injective))


def psi_checks(X: FinBiSet, x: int, top: int | None = None) -> TwistReport:
    """ψ′, ψ″ over ``X``, identity on level 0, and ``π_n ∘ ψ″_n = Id``."""
    T = tilde_under(X, x, top)
    U = under(X, x)
    pp = psi_prime(T, U)
    over1 = all(U.end(a, T.obj.dims[g]) == T.projection.assignment[g] for g, a in pp.items())
    Fib = twist_fiber(X, x, top)
    pd = psi_dprime(T, Fib, top)
    over2 = (Fib.projection @ pd).assignment == T.projection.assignment
    M = reindexing(MU, X, top)
    # level 0: x\~X_0 = {x} ×_{X_0} X_1 = (x\X)_{0,0}, and both maps are this identification
    lvl0 = True
    for g in T.obj.generators_of((0, 0)):
        e = T.cells[g]
        U_cell = pp[g]
        P = U.cone((0, 0))
        whole = P.tuple_cell([U.F1.cell(len(U.F1) - 1), _vertex_cell(P.factors[1], (1, 0), 0)])
        if EZMap(P.obj, X, U_cell).map_cell(whole) != e:
            lvl0 = False
        if M.base_cell(Fib.inclusion.map_cell(pd.map_cell(T.obj.cell(g)))) != e:
            lvl0 = False
    section = True
    for g in T.obj.generators:
        n, m = T.obj.dims[g]
        w = M.base_cell(Fib.inclusion.map_cell(pd.map_cell(T.obj.cell(g))))
        if X.apply((shift(n, n + 1, 2 * n + 1), identity(m)), w) != T.cells[g]:
            section = False
    return TwistReport(lvl0, over1, over2, section, pd.is_mono())


# ---------------------------------------------------------------------------
# category of elements

class ElementsNerve:
    """Cells are ``(chain, a)`` with ``a`` in ``F`` of the chain's first object
    (last object for a presheaf); faces move ``a`` along the dropped arrow."""

    def __init__(self, N: Nerve, Fn: SetFunctor):
        self.nerve = N
        self.functor = Fn
        keys = []
        for k in N.keys:
            anchor = N.vertices_of(k)[-1 if Fn.contravariant else 0]
            keys.extend((k, a) for a in Fn.sets[anchor])
        keys.sort(key=lambda t: (N.degree(t[0]), N.index[t[0]], Fn.sets[_anchor(N, Fn, t[0])].index(t[1])))
        self.keys = keys
        self.index = {k: g for g, k in enumerate(keys)}
        dims, faces, labels = [], [], []
        for k, a in keys:
            n = N.degree(k)
            dims.append((n,))
            faces.append((tuple(self.act(_face(i, n), (k, a)) for i in range(n + 1)) if n else (),))
            labels.append(f"{'|'.join(k)}:{a}")
        self.obj = FinSSet(dims, faces, labels)
        self.projection = EZMap(self.obj, N.obj, [N.obj.cell(N.index[k]) for k, _ in keys])

    def act(self, tau: OrdinalMap, key) -> NormalSimplex:
        N, Fn = self.nerve, self.functor
        k, a = key
        arrows = k[1:]
        if Fn.contravariant:
            # pull back along the arrows after the new last vertex
            for f in reversed(arrows[tau.values[-1]:]):
                a = Fn(f, a)
        else:
            for f in arrows[: tau.values[0]]:
                a = Fn(f, a)
        c = N.act(tau, k)
        return NormalSimplex(c.epis, self.index[(N.keys[c.gen], a)])


def _anchor(N, Fn, k):
    return N.vertices_of(k)[-1 if Fn.contravariant else 0]


def _face(i, n):
    return OrdinalMap(tuple(v for v in range(n + 1) if v != i), n)


@dataclass
class ElementsFibration:
    category: FinCat
    functor: SetFunctor
    total: FinBiSet
    base: FinBiSet
    projection: EZMap
    data: ElementsNerve


def elements(C: FinCat, Fn: SetFunctor, top: int | None = None, check: int | None = None) -> ElementsFibration:
    """The left fibration ``∫F -> N(C)`` (a right fibration for a presheaf).

    With ``check`` set, the projection is verified as a left fibration at that
    bound and a failure raises.
    """
    try:
        Fn.validate()
    except CategoryError:
        raise
    N = nerve_data(C, top)
    E = ElementsNerve(N, Fn)
    total = disc(E.obj)
    base = disc_nerve(C, top)
    proj = EZMap(total, base, [NormalSimplex((c.epis[0], identity(0)), c.gen) for c in E.projection.assignment])
    fib = ElementsFibration(C, Fn, total, base, proj, E)
    if check is not None and not check_left_fibration(proj, check).holds:
        raise InvariantViolation("the elements projection is not a left fibration")
    return fib


def fiber_set(E: ElementsFibration, x: str) -> list:
    return sorted(E.data.keys[g][1] for g in E.data.obj.vertices() if E.data.keys[g][0] == (x,))


# ---------------------------------------------------------------------------
# evaluation and Yoneda

@dataclass
class EvaluationReport:
    holds: bool
    maps: int
    fiber: int
    tier: str = EXACT
    anchor: str = "P:triv"


def evaluation_check(C: FinCat, x: str, E: ElementsFibration, bound: int = 2) -> EvaluationReport:
    """``ev_{id_x} : Map_X(x\\X, E)_0 -> F(x)`` is a bijection.

    Maps out of ``x\\X`` are enumerated on its ``bound``-skeleton; ``bound >= 2``
    suffices because the target is a nerve.
    """
    X = E.base
    if not check_segal_discrete(X, 2).holds:
        raise ValueError("Segal check fails")
    N = E.data.nerve
    xv = N.index[(x,)]
    U = under(X, xv).materialize(bound)
    idc = U.id_cell()
    images = []
    for c in hom_enum(U.obj, E.total, over=(E.projection, U.projection)):
        v = c.map_cell(idc)
        images.append(E.data.keys[v.gen][1])
    fx = E.functor.sets[x]
    ok = len(images) == len(fx) and set(images) == set(fx)
    return EvaluationReport(ok, len(images), len(fx))


@dataclass
class YonedaReport:
    holds: bool
    fibers: dict
    homs: dict
    natural: bool
    tier: str = EXACT
    anchor: str = "T:yoneda(b)"


def fully_faithful_yoneda_check(C: FinCat) -> YonedaReport:
    """Fibers of ``π_X`` over ``(x, y)`` against ``Hom_C(x, y)``, plus naturality."""
    top = 3 if C.non_identity_cycle() else None
    X = disc_nerve(C, top)
    tp = twist_projection(X, top=1)
    M, Op = tp.twisted, tp.op
    verts = {g: X.labels[g] for g in X.vertices()}
    fibers = {(a, b): 0 for a in verts.values() for b in verts.values()}
    for g in M.obj.generators_of((0, 0)):
        c = tp.map.map_cell(M.obj.cell(g))
        l = tp.cone.legs[0].map_cell(c)
        r = tp.cone.legs[1].map_cell(c)
        fibers[(verts[Op.base_cell(l).gen], verts[r.gen])] += 1
    homs = {(a, b): len(C.hom(a, b)) for a in verts.values() for b in verts.values()}
    H = homotopy_category(X)
    Hc = H.category
    name = {e: n for n, e in H.arrow_of.items()}
    natural = True
    for c in M.obj.levels((1, 0)):
        f0 = M.base_cell(M.obj.face_of(c, 0, 0))
        f1 = M.base_cell(M.obj.face_of(c, 0, 1))
        pc = tp.map.map_cell(c)
        left = Op.base_cell(tp.cone.legs[0].map_cell(pc))
        right = tp.cone.legs[1].map_cell(pc)
        comp = Hc.compose(name[right], Hc.compose(name[f1], name[left]))
        if comp != name[f0]:
            natural = False
    return YonedaReport(fibers == homs and natural, fibers, homs, natural)


def twist_left_check(C: FinCat, bound: int = 3):
    """``π_X : M(X) -> X^op × X`` for ``X`` the nerve of ``C``, checked as a left fibration.

    A nerve with a non-identity cycle is truncated at ``2 bound + 1``, which is
    enough to hold every cell the twisted object needs up to ``bound``.
    """
    top = 2 * bound + 1 if C.non_identity_cycle() else None
    tp = twist_projection(disc_nerve(C, top), top=bound)
    return check_left_fibration(tp.map, bound)
