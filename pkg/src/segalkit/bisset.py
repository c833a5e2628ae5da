"""Finite bisimplicial sets: standard bisimplices, rows, reindexing along
endofunctors of Δ, the twisted-arrow projection, skeleta and τ-pieces."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .ez import (
    EZMap,
    EZObject,
    FinBiSet,
    FinSSet,
    LimitCone,
    NormalSimplex,
    coproduct,
    product,
    pushout,
    representable,
    restrict,
)
from .ordinal import (
    OrdinalMap,
    compose,
    cone,
    degeneracy,
    face,
    identity,
    opposite as ord_opposite,
    shift,
    twist as ord_twist,
)
from . import sset


def _from_sset(X: FinSSet, axis: int) -> FinBiSet:
    dims, faces, arrows = [], [], []
    id0 = identity(0)
    for g in X.generators:
        d = X.dims[g][0]
        lifted = tuple(
            NormalSimplex((c.surjection, id0) if axis == 0 else (id0, c.surjection), c.gen)
            for c in X.faces[g][0]
        )
        if axis == 0:
            dims.append((d, 0))
            faces.append((lifted, ()))
        else:
            dims.append((0, d))
            faces.append(((), lifted))
        if X.arrows is not None:
            m = X.arrows[g][0]
            arrows.append((m, id0) if axis == 0 else (id0, m))
    return FinBiSet(dims, faces, X.labels, arrows if X.arrows is not None else None)


def disc(X: FinSSet) -> FinBiSet:
    """``X`` placed along the first axis, discrete in the second."""
    return _from_sset(X, 0)


def disc_map(f: EZMap) -> EZMap:
    """``disc(f) : disc(X) -> disc(Y)`` between freshly built discrete objects."""
    id0 = identity(0)
    return EZMap(disc(f.source), disc(f.target),
                 [NormalSimplex((c.epis[0], id0), c.gen) for c in f.assignment])


def constant(X: FinSSet) -> FinBiSet:
    """The constant simplicial space with value ``X``."""
    return _from_sset(X, 1)


def box(n: int, m: int) -> FinBiSet:
    if n < 0 or m < 0:
        raise ValueError("box indices must be non-negative")
    return representable((n, m))


def boundary_box(n: int, m: int) -> FinBiSet:
    B = box(n, m)
    return restrict(B, [g for g in B.generators if B.dims[g] != (n, m)])[0]


@lru_cache(maxsize=None)
def F(n: int) -> FinBiSet:
    return disc(sset.standard(n))


def dF(n: int) -> FinBiSet:
    return disc(sset.boundary(n))


def Fhorn(n: int, i: int) -> FinBiSet:
    return disc(sset.horn(n, i))


def sub_box(n: int, m: int, keep: Callable[[OrdinalMap, OrdinalMap], bool]) -> FinBiSet:
    """Subobject of □[n,m] on the generators ``(σ, ρ)`` accepted by ``keep``."""
    B = box(n, m)
    return restrict(B, [g for g in B.generators if keep(*B.arrows[g])])[0]


def bis_skeleton(X: EZObject, n: int) -> EZObject:
    return sset.skeleton(X, n)


def nondegenerate(X: EZObject) -> dict[tuple[int, ...], list[int]]:
    out: dict = {}
    for g in X.generators:
        out.setdefault(X.dims[g], []).append(g)
    return out


def is_discrete(X: FinBiSet) -> bool:
    return all(d[1] == 0 for d in X.dims)


# ---------------------------------------------------------------------------
# rows

class Row:
    """The simplicial set ``X_n``: first index frozen at ``n``."""

    def __init__(self, X: FinBiSet, n: int):
        self.base = X
        self.n = n
        keys = []
        for g, (k, m) in enumerate(X.dims):
            for sig in _surj(n, k):
                keys.append((m, g, sig))
        keys.sort()
        self.keys = [(g, sig) for _, g, sig in keys]
        self.index = {k: i for i, k in enumerate(self.keys)}
        dims, faces, labels = [], [], []
        for g, sig in self.keys:
            m = X.dims[g][1]
            dims.append((m,))
            top = NormalSimplex((sig, identity(m)), g)
            faces.append((tuple(self.to_row(X.face_of(top, 1, i)) for i in range(m + 1)) if m else (),))
            labels.append(X.labels[g] if sig.is_identity() else
                          "s" + "".join(map(str, sig.values)) + ":" + X.labels[g])
        self.obj = FinSSet(dims, faces, labels)

    def to_row(self, cell: NormalSimplex) -> NormalSimplex:
        sig, rho = cell.epis
        return NormalSimplex((rho,), self.index[(cell.gen, sig)])

    def from_row(self, cell: NormalSimplex) -> NormalSimplex:
        g, sig = self.keys[cell.gen]
        return NormalSimplex((sig, cell.epis[0]), g)


def _surj(n, k):
    from .ordinal import surjections
    return surjections(n, k)


def row_view(X: FinBiSet, n: int) -> Row:
    cache = X.__dict__.setdefault("_rows", {})
    if n not in cache:
        cache[n] = Row(X, n)
    return cache[n]


def row(X: FinBiSet, n: int) -> FinSSet:
    return row_view(X, n).obj


def row_map(f: EZMap, n: int) -> EZMap:
    """``f_n : X_n -> Y_n``."""
    RX, RY = row_view(f.source, n), row_view(f.target, n)
    return EZMap(RX.obj, RY.obj, [
        RY.to_row(f.map_cell(RX.from_row(RX.obj.cell(g)))) for g in RX.obj.generators
    ])


def row_operator(X: FinBiSet, tau: OrdinalMap) -> EZMap:
    """``τ^* : X_m -> X_n`` for ``τ : [n] -> [m]``, as a map of simplicial sets."""
    Rm, Rn = row_view(X, tau.cod), row_view(X, tau.dom)

    def img(c):
        x = Rm.from_row(c)
        return Rn.to_row(X.apply((tau, identity(x.level[1])), x))

    return EZMap(Rm.obj, Rn.obj, [img(Rm.obj.cell(g)) for g in Rm.obj.generators])


def column(X: FinBiSet) -> FinSSet:
    """The simplicial set ``n -> X_{n,0}`` (the first-axis part of a discrete object)."""
    keep = [g for g in X.generators if X.dims[g][1] == 0]
    Y, _ = restrict(X, keep)
    return FinSSet([(d[0],) for d in Y.dims],
                   [(tuple(NormalSimplex((c.epis[0],), c.gen) for c in f[0]),) for f in Y.faces],
                   Y.labels)


# ---------------------------------------------------------------------------
# reindexing along functors Δ -> Δ

@dataclass(frozen=True)
class DeltaFunctor:
    name: str
    obj: Callable[[int], int]
    arrow: Callable[[OrdinalMap], OrdinalMap]
    # non-degenerate cells of the reindexed object sit at levels <= bound(max first dimension)
    bound: Callable[[int], int] = field(default=lambda k: k)

    def check_functorial(self, size: int = 3) -> bool:
        from .ordinal import enumerate_maps
        for n in range(size + 1):
            if self.arrow(identity(n)) != identity(self.obj(n)):
                return False
            for m in range(size + 1):
                for k in range(size + 1):
                    for f in enumerate_maps(n, m):
                        for g in enumerate_maps(m, k):
                            if self.arrow(compose(g, f)) != compose(self.arrow(g), self.arrow(f)):
                                return False
        return True


IOTA = DeltaFunctor("op", lambda n: n, ord_opposite)
MU = DeltaFunctor("tw", lambda n: 2 * n + 1, ord_twist)
CONE = DeltaFunctor("cone", lambda n: n + 1, cone)


class Reindexing:
    """``Φ^* X`` with the dictionary between its cells and cells of ``X``."""

    def __init__(self, functor: DeltaFunctor, X: FinBiSet, top: int | None = None):
        self.functor = functor
        self.base = X
        self.top = top
        Phi = functor
        kmax, mmax = X.max_dims()
        self.index: dict = {}
        keys = []
        self._norm_cache: dict = {}
        for n in range(Phi.bound(kmax) + 1 if kmax >= 0 else 0):
            for m in range(mmax + 1):
                if top is not None and n + m > top:
                    continue
                for x in X.levels((Phi.obj(n), m)):
                    if not x.epis[1].is_identity():
                        continue
                    if self._collapse(x, n) is None:
                        keys.append(((n, m), x))
        keys.sort(key=lambda t: (sum(t[0]), t[0], t[1]))
        self.keys = keys
        self.index = {x: i for i, (_, x) in enumerate(keys)}
        dims, faces, labels = [], [], []
        for (n, m), x in keys:
            dims.append((n, m))
            f0 = tuple(
                self.normalize(X.apply((Phi.arrow(face(i, n)), identity(m)), x), n - 1)
                for i in range(n + 1)
            ) if n else ()
            f1 = tuple(self.normalize(X.face_of(x, 1, j), n) for j in range(m + 1)) if m else ()
            faces.append((f0, f1))
            labels.append(f"{Phi.name}[{_label(X, x)}]")
        self.obj = FinBiSet(dims, faces, labels)

    def _collapse(self, x: NormalSimplex, n: int):
        # a j with x = Φ(s^j)^* Φ(d^j)^* x, plus that face; None if Φ-non-degenerate
        Phi, X = self.functor, self.base
        m = x.level[1]
        for j in range(n):
            y = X.apply((Phi.arrow(face(j, n)), identity(m)), x)
            if X.apply((Phi.arrow(degeneracy(j, n - 1)), identity(m)), y) == x:
                return j, y
        return None

    def normalize(self, z: NormalSimplex, n: int) -> NormalSimplex:
        """The cell of ``Φ^* X`` at level ``(n, m)`` given by ``z ∈ X_{Φ(n), m}``."""
        key = (z, n)
        hit = self._norm_cache.get(key)
        if hit is not None:
            return hit
        rho = z.epis[1]
        top = NormalSimplex((z.epis[0], identity(rho.cod)), z.gen)
        eta, gid = self._normalize_first(top, n)
        out = NormalSimplex((eta, rho), gid)
        self._norm_cache[key] = out
        return out

    def _normalize_first(self, x: NormalSimplex, n: int):
        gid = self.index.get(x)
        if gid is not None and self.keys[gid][0][0] == n:
            return identity(n), gid
        hit = self._collapse(x, n)
        if hit is None:
            raise KeyError("cell is non-degenerate but unknown; level bound too small")
        j, y = hit
        eta, gid = self._normalize_first(y, n - 1)
        return compose(eta, degeneracy(j, n - 1)), gid

    def base_cell(self, cell: NormalSimplex) -> NormalSimplex:
        """The cell of ``X`` at level ``(Φ(n), m)`` represented by ``cell``."""
        (k, _), x = self.keys[cell.gen]
        eta, rho = cell.epis
        return self.base.apply((self.functor.arrow(eta), rho), x)


def _label(X, c):
    if c.is_generator():
        return X.labels[c.gen]
    return "s" + ";".join("".join(map(str, e.values)) for e in c.epis) + ":" + X.labels[c.gen]


def reindexing(functor: DeltaFunctor, X: FinBiSet, top: int | None = None) -> Reindexing:
    """``Φ^* X``; with ``top`` only its ``top``-skeleton is built."""
    cache = X.__dict__.setdefault("_reindex", {})
    key = (functor.name, top)
    if key not in cache:
        cache[key] = Reindexing(functor, X, top)
    return cache[key]


def reindex(functor: DeltaFunctor, X: FinBiSet, top: int | None = None) -> FinBiSet:
    return reindexing(functor, X, top).obj


def reindex_map(functor: DeltaFunctor, f: EZMap) -> EZMap:
    RX, RY = reindexing(functor, f.source), reindexing(functor, f.target)
    out = []
    for g in RX.obj.generators:
        n = RX.obj.dims[g][0]
        out.append(RY.normalize(f.map_cell(RX.base_cell(RX.obj.cell(g))), n))
    return EZMap(RX.obj, RY.obj, out)


def opposite(X: FinBiSet) -> FinBiSet:
    return reindex(IOTA, X)


def twisted(X: FinBiSet) -> FinBiSet:
    return reindex(MU, X)


@dataclass
class TwistProjection:
    twisted: Reindexing
    op: Reindexing
    cone: LimitCone
    map: EZMap


def twist_projection(X: FinBiSet, top: int | None = None) -> TwistProjection:
    """``π_X : M(X) -> X^op × X`` from the two halves ``e^0`` and ``e^{n+1}``.

    With ``top`` both sides are cut down to their ``top``-skeleta; for a
    truncated nerve this is faithful as long as ``X`` holds cells up to
    level ``2 top + 1``.
    """
    M, Op = reindexing(MU, X, top), reindexing(IOTA, X, top)
    P = product(Op.obj, X, top=top)
    out = []
    for g in M.obj.generators:
        n, m = M.obj.dims[g]
        w = M.base_cell(M.obj.cell(g))
        left = X.apply((shift(0, n, 2 * n + 1), identity(m)), w)
        right = X.apply((shift(n + 1, n, 2 * n + 1), identity(m)), w)
        out.append(P.tuple_cell([Op.normalize(left, n), right]))
    return TwistProjection(M, Op, P, EZMap(M.obj, P.obj, out))


# ---------------------------------------------------------------------------
# skeleta and τ-pieces

def skeleton_pushout(X: FinBiSet, n: int):
    """Rebuild ``sk_n X`` from ``sk_{n-1} X`` by attaching boxes along boundaries.

    Returns ``(pushout object, comparison map to sk_n X)``.
    """
    if n < 1:
        raise ValueError("attaching starts at total degree 1")
    sk, _ = restrict(X, [g for g in X.generators if sum(X.dims[g]) <= n])
    low, low_inc = restrict(sk, [g for g in sk.generators if sum(sk.dims[g]) <= n - 1])
    cells = [g for g in sk.generators if sum(sk.dims[g]) == n]
    if not cells:
        return low, low_inc
    back = {c.gen: k for k, c in enumerate(low_inc.assignment)}
    boxes, bounds, incs, atts, classes = [], [], [], [], []
    for g in cells:
        B = box(*sk.dims[g])
        dB, inc = restrict(B, [h for h in B.generators if B.dims[h] != sk.dims[g]])
        boxes.append(B)
        bounds.append(dB)
        incs.append(inc)
        att = []
        for h in dB.generators:
            c = sk.apply(dB.arrows[h], sk.cell(g))
            att.append(NormalSimplex(c.epis, back[c.gen]))
        atts.append(EZMap(dB, low, att))
        classes.append(EZMap(B, sk, [sk.apply(arr, sk.cell(g)) for arr in B.arrows]))
    Box, Bd = coproduct(*boxes), coproduct(*bounds)
    i = Bd.induced([leg @ inc for leg, inc in zip(Box.legs, incs)])
    att = Bd.induced(atts)
    P = pushout(i, att)
    comparison = P.induced([Box.induced(classes), low_inc])
    return P.obj, comparison


def fm_component(cone: LimitCone, cell: NormalSimplex) -> OrdinalMap:
    """The ``τ : [n] -> [m]`` recorded by the ``F[m]`` factor of a cell of ``B × F[m]``."""
    Fm = cone.factors[1]
    c = cone.legs[1].map_cell(cell)
    return compose(Fm.arrows[c.gen][0], c.epis[0])


def tau_decompose(p: EZMap, cone: LimitCone, n: int):
    """Split ``X_n`` along ``p : X -> B × F[m]``.

    Returns ``{τ: (piece, inclusion into X_n, projection piece -> B_n)}`` over all
    ``τ : [n] -> [m]``; ``cone`` is the product cone whose object is ``p.target``.
    """
    from .ordinal import enumerate_maps

    Fm = cone.factors[1]
    m = Fm.max_dims()[0]
    if (Fm.arrows is None or any(d[1] for d in Fm.dims) or p.target is not cone.obj
            or len(Fm.generators_of((m, 0))) != 1 or len(Fm) != 2 ** (m + 1) - 1):
        raise ValueError("target is not of the form B × F[m]")
    R = row_view(p.source, n)
    to_B = row_map(cone.legs[0] @ p, n)
    by_tau: dict = {t: [] for t in enumerate_maps(n, m)}
    for g in R.obj.generators:
        x = R.from_row(R.obj.cell(g))
        by_tau[fm_component(cone, p.map_cell(x))].append(g)
    out = {}
    for t, gens in by_tau.items():
        piece, inc = restrict(R.obj, gens)
        out[t] = (piece, inc, to_B @ inc)
    return out
