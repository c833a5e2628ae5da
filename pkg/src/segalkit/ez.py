"""Finite presheaves on Δ^k (k = 1 or 2) in Eilenberg–Zilber normal form.

A finite object is a list of generators (non-degenerate cells), each with a
multi-degree and, along every axis of positive degree, its tuple of faces.
Every cell of the object is a :class:`NormalSimplex`: a tuple of epis (one
per axis) applied to a generator.  Generators are integers; their numbering
is the canonical order (total degree, degree, insertion index).
"""
from __future__ import annotations

from functools import lru_cache

import os
from itertools import product as iproduct
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence

from .ordinal import (
    OrdinalMap,
    common_epi,
    compose,
    epi_mono_factor,
    face,
    identity,
    injections,
    strip_face,
    surjections,
)

DEFAULT_MAX_CELLS = 5000


class ResourceLimit(RuntimeError):
    """An enumeration grew past ``SEGALKIT_MAX_CELLS``."""


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; this signals a bug, never a verdict."""


def max_cells() -> int:
    return int(os.environ.get("SEGALKIT_MAX_CELLS", DEFAULT_MAX_CELLS))


class NormalSimplex(NamedTuple):
    """A cell ``σ^* g`` with ``σ`` a tuple of epis, one per axis."""

    epis: tuple[OrdinalMap, ...]
    gen: int

    @property
    def surjection(self) -> OrdinalMap:
        return self.epis[0]

    @property
    def level(self) -> tuple[int, ...]:
        return tuple(e.dom for e in self.epis)

    def is_generator(self) -> bool:
        return all(e.is_identity() for e in self.epis)


def _ids(dims: Sequence[int]) -> tuple[OrdinalMap, ...]:
    return tuple(identity(d) for d in dims)


def _precompose(cell: NormalSimplex, epis: Sequence[OrdinalMap]) -> NormalSimplex:
    # (σ^* g) pulled back along further epis
    return NormalSimplex(tuple(compose(a, b) for a, b in zip(cell.epis, epis)), cell.gen)


class EZObject:
    """Shared machinery; use :class:`FinSSet` or :class:`FinBiSet`."""

    axes = 0

    def __init__(self, dims, faces, labels=None, arrows=None):
        self.dims: tuple[tuple[int, ...], ...] = tuple(tuple(d) for d in dims)
        self.faces: tuple[tuple[tuple[NormalSimplex, ...], ...], ...] = tuple(
            tuple(tuple(fa) for fa in f) for f in faces
        )
        if labels is None:
            labels = [str(i) for i in range(len(self.dims))]
        self.labels: tuple[str, ...] = tuple(labels)
        # for subobjects of a representable: the mono tuple naming each generator
        self.arrows = None if arrows is None else tuple(arrows)
        self._apply_cache: dict = {}
        self._levels: dict = {}
        self._face_index: dict = {}
        self._by_dims: dict | None = None

    # -- basic accessors -------------------------------------------------
    def __len__(self) -> int:
        return len(self.dims)

    def __repr__(self):
        counts: dict = {}
        for d in self.dims:
            counts[d] = counts.get(d, 0) + 1
        body = ", ".join(f"{k}:{v}" for k, v in sorted(counts.items()))
        return f"{type(self).__name__}({body})"

    @property
    def generators(self) -> range:
        return range(len(self.dims))

    def generators_of(self, dims: Sequence[int]) -> list[int]:
        if self._by_dims is None:
            by: dict = {}
            for g, d in enumerate(self.dims):
                by.setdefault(d, []).append(g)
            self._by_dims = by
        return self._by_dims.get(tuple(dims), [])

    def cell(self, g: int) -> NormalSimplex:
        return NormalSimplex(_ids(self.dims[g]), g)

    def max_dims(self) -> tuple[int, ...]:
        if not self.dims:
            return (-1,) * self.axes
        return tuple(max(d[a] for d in self.dims) for a in range(self.axes))

    def dimension(self) -> int:
        return max((sum(d) for d in self.dims), default=-1)

    def vertices(self) -> list[int]:
        return self.generators_of((0,) * self.axes)

    # -- simplicial action -------------------------------------------------
    def apply(self, taus: Sequence[OrdinalMap], cell: NormalSimplex) -> NormalSimplex:
        """``τ^*`` of a cell, returned in normal form."""
        taus = tuple(taus)
        key = (taus, cell)
        hit = self._apply_cache.get(key)
        if hit is not None:
            return hit
        epis, monos = [], []
        for tau, e in zip(taus, cell.epis):
            if tau.cod != e.dom:
                raise ValueError(f"{tau!r} does not act on level {cell.level}")
            ep, mo = epi_mono_factor(compose(e, tau))
            epis.append(ep)
            monos.append(mo)
        base = self._apply_monos(tuple(monos), cell.gen)
        out = _precompose(base, epis)
        self._apply_cache[key] = out
        return out

    def _apply_monos(self, monos: tuple[OrdinalMap, ...], g: int) -> NormalSimplex:
        for a, mono in enumerate(monos):
            if not mono.is_identity():
                i, rest = strip_face(mono)
                sub = self.faces[g][a][i]
                taus = monos[:a] + (rest,) + monos[a + 1:]
                return self.apply(taus, sub)
        return self.cell(g)

    def face_of(self, cell: NormalSimplex, axis: int, i: int) -> NormalSimplex:
        lvl = cell.level
        taus = tuple(face(i, n) if a == axis else identity(n) for a, n in enumerate(lvl))
        return self.apply(taus, cell)

    def face_key(self, cell: NormalSimplex) -> tuple:
        lvl = cell.level
        return tuple(
            tuple(self.face_of(cell, a, i) for i in range(n + 1)) if n > 0 else ()
            for a, n in enumerate(lvl)
        )

    def levels(self, dims: Sequence[int]) -> list[NormalSimplex]:
        """All cells at the given level, canonical order (generator, then epis)."""
        dims = tuple(dims)
        hit = self._levels.get(dims)
        if hit is not None:
            return hit
        out = []
        cap = max_cells()
        for g, gd in enumerate(self.dims):
            if any(k > n for k, n in zip(gd, dims)):
                continue
            for epis in iproduct(*(surjections(n, k) for n, k in zip(dims, gd))):
                out.append(NormalSimplex(epis, g))
                if len(out) > cap:
                    raise ResourceLimit(f"level {dims} exceeds {cap} cells")
        self._levels[dims] = out
        return out

    def face_index(self, dims: Sequence[int]) -> dict:
        dims = tuple(dims)
        hit = self._face_index.get(dims)
        if hit is None:
            hit = {}
            for c in self.levels(dims):
                hit.setdefault(self.face_key(c), []).append(c)
            self._face_index[dims] = hit
        return hit

    def vertex_cells(self, cell: NormalSimplex) -> list[NormalSimplex]:
        """The vertices of a cell (all constant restrictions)."""
        out = []
        for pts in iproduct(*(range(n + 1) for n in cell.level)):
            taus = tuple(OrdinalMap((p,), n) for p, n in zip(pts, cell.level))
            out.append(self.apply(taus, cell))
        return out

    # -- checks ----------------------------------------------------------
    def validate(self) -> None:
        """Raise ``ValueError`` unless faces are well typed and satisfy the simplicial identities."""
        for g, gd in enumerate(self.dims):
            if len(self.faces[g]) != self.axes:
                raise ValueError(f"generator {g}: wrong number of axes")
            for a in range(self.axes):
                expected = gd[a] + 1 if gd[a] > 0 else 0
                fs = self.faces[g][a]
                if len(fs) != expected:
                    raise ValueError(f"generator {g}: expected {expected} faces on axis {a}")
                for c in fs:
                    want = tuple(d - 1 if b == a else d for b, d in enumerate(gd))
                    if c.level != want or not all(e.is_surjective() for e in c.epis):
                        raise ValueError(f"generator {g}: malformed face {c}")
                    if not 0 <= c.gen < len(self.dims) or sum(self.dims[c.gen]) >= sum(gd):
                        raise ValueError(f"generator {g}: face generator out of order")
                    if tuple(e.cod for e in c.epis) != self.dims[c.gen]:
                        raise ValueError(f"generator {g}: face epis do not land on {c.gen}")
            # d_i d_j = d_{j-1} d_i for i < j on each axis, and faces on distinct axes commute
            for a in range(self.axes):
                n = gd[a]
                for j in range(n + 1):
                    for i in range(j):
                        if n < 2:
                            continue
                        lhs = self.face_of(self.faces[g][a][j], a, i)
                        rhs = self.face_of(self.faces[g][a][i], a, j - 1)
                        if lhs != rhs:
                            raise ValueError(f"generator {g}: simplicial identity fails ({a},{i},{j})")
            if self.axes == 2 and gd[0] > 0 and gd[1] > 0:
                for i in range(gd[0] + 1):
                    for j in range(gd[1] + 1):
                        lhs = self.face_of(self.faces[g][0][i], 1, j)
                        rhs = self.face_of(self.faces[g][1][j], 0, i)
                        if lhs != rhs:
                            raise ValueError(f"generator {g}: axis faces do not commute")

    def sub(self, keep: Iterable[int]) -> tuple["EZObject", "EZMap"]:
        """The subobject generated by ``keep`` (closed under faces) and its inclusion."""
        todo = list(keep)
        seen = set()
        while todo:
            g = todo.pop()
            if g in seen:
                continue
            seen.add(g)
            for fa in self.faces[g]:
                todo.extend(c.gen for c in fa)
        return restrict(self, sorted(seen))


class FinSSet(EZObject):
    """A finite simplicial set."""

    axes = 1

    def dims_of(self, g: int) -> int:
        return self.dims[g][0]


class FinBiSet(EZObject):
    """A finite bisimplicial set; the first axis is the outer (space) index."""

    axes = 2


def make(axes: int, dims, faces, labels=None, arrows=None) -> EZObject:
    cls = FinSSet if axes == 1 else FinBiSet
    return cls(dims, faces, labels, arrows)


class EZMap:
    """A map of finite presheaves, given on generators."""

    __slots__ = ("source", "target", "assignment")

    def __init__(self, source: EZObject, target: EZObject, assignment: Sequence[NormalSimplex]):
        self.source = source
        self.target = target
        self.assignment = tuple(assignment)

    def __repr__(self):
        return f"EZMap({self.source!r} -> {self.target!r})"

    def __eq__(self, other):
        return (
            isinstance(other, EZMap)
            and self.source is other.source
            and self.target is other.target
            and self.assignment == other.assignment
        )

    def __hash__(self):
        return hash(self.assignment)

    def map_cell(self, cell: NormalSimplex) -> NormalSimplex:
        return _precompose(self.assignment[cell.gen], cell.epis)

    def __matmul__(self, other: "EZMap") -> "EZMap":
        return compose_maps(self, other)

    def validate(self) -> None:
        X, Y = self.source, self.target
        if len(self.assignment) != len(X):
            raise ValueError("assignment does not cover the generators")
        for g, gd in enumerate(X.dims):
            img = self.assignment[g]
            if img.level != gd or not 0 <= img.gen < len(Y):
                raise ValueError(f"generator {g} sent to a cell of the wrong level")
            for a in range(X.axes):
                for i, fc in enumerate(X.faces[g][a]):
                    if Y.face_of(img, a, i) != self.map_cell(fc):
                        raise ValueError(f"map does not commute with face {i} on axis {a} at {g}")

    def is_mono(self) -> bool:
        gens = [c.gen for c in self.assignment]
        return all(c.is_generator() for c in self.assignment) and len(set(gens)) == len(gens)

    def is_epi(self) -> bool:
        return {c.gen for c in self.assignment} == set(self.target.generators)

    def is_iso(self) -> bool:
        return self.is_mono() and len(self.source) == len(self.target)

    def image_generators(self) -> set[int]:
        return {c.gen for c in self.assignment}


SSetMap = EZMap
BiMap = EZMap


def identity_map(X: EZObject) -> EZMap:
    return EZMap(X, X, [X.cell(g) for g in X.generators])


def compose_maps(g: EZMap, f: EZMap) -> EZMap:
    if f.target is not g.source:
        raise ValueError("maps are not composable")
    return EZMap(f.source, g.target, [g.map_cell(c) for c in f.assignment])


def map_from_cells(X: EZObject, Y: EZObject, fn: Callable[[NormalSimplex], NormalSimplex]) -> EZMap:
    """The map whose value on each generator cell of ``X`` is ``fn(cell)``."""
    return EZMap(X, Y, [fn(X.cell(g)) for g in X.generators])


def restrict(X: EZObject, keep: Sequence[int]) -> tuple[EZObject, EZMap]:
    """Subobject on a face-closed set of generators, with its inclusion."""
    keep = sorted(keep)
    new = {g: k for k, g in enumerate(keep)}
    faces = []
    for g in keep:
        fs = []
        for fa in X.faces[g]:
            row = []
            for c in fa:
                if c.gen not in new:
                    raise ValueError("generator set is not closed under faces")
                row.append(NormalSimplex(c.epis, new[c.gen]))
            fs.append(tuple(row))
        faces.append(tuple(fs))
    arrows = None if X.arrows is None else [X.arrows[g] for g in keep]
    Y = make(X.axes, [X.dims[g] for g in keep], faces, [X.labels[g] for g in keep], arrows)
    inc = EZMap(Y, X, [X.cell(g) for g in keep])
    return Y, inc


def empty(axes: int) -> EZObject:
    return make(axes, [], [])


def point(axes: int) -> EZObject:
    """The terminal object, shared so that maps into it compose."""
    return representable((0,) * axes)


def representable(dims: Sequence[int]) -> EZObject:
    return _representable(tuple(dims))


@lru_cache(maxsize=None)
def _representable(dims: tuple[int, ...]) -> EZObject:
    """``Hom(-, [n_1] × ... × [n_k])``: generators are tuples of injections."""
    axes = len(dims)
    keys = []
    for ks in iproduct(*(range(n + 1) for n in dims)):
        for monos in iproduct(*(injections(k, n) for k, n in zip(ks, dims))):
            keys.append(monos)
    keys.sort(key=lambda ms: (sum(m.dom for m in ms), tuple(m.dom for m in ms), ms))
    index = {k: i for i, k in enumerate(keys)}
    faces = []
    for ms in keys:
        fs = []
        for a, m in enumerate(ms):
            if m.dom == 0:
                fs.append(())
                continue
            row = []
            for i in range(m.dom + 1):
                sub = ms[:a] + (compose(m, face(i, m.dom)),) + ms[a + 1:]
                row.append(NormalSimplex(_ids([s.dom for s in sub]), index[sub]))
            fs.append(tuple(row))
        faces.append(tuple(fs))
    labels = ["|".join("".join(map(str, m.values)) for m in ms) for ms in keys]
    return make(axes, [tuple(m.dom for m in ms) for ms in keys], faces, labels, keys)


def classifying_map(R: EZObject, X: EZObject, cell: NormalSimplex) -> EZMap:
    """The map from a (subobject of a) representable picking out ``cell``."""
    if R.arrows is None:
        raise ValueError("source does not remember its representing arrows")
    return EZMap(R, X, [X.apply(arr, cell) for arr in R.arrows])


def restrict_cell(R: EZObject, X: EZObject, cell: NormalSimplex) -> tuple[NormalSimplex, ...]:
    """Images of the generators of ``R`` under the map classifying ``cell``."""
    return tuple(X.apply(arr, cell) for arr in R.arrows)


# ---------------------------------------------------------------------------
# limits

class LimitCone:
    """A finite limit realized as a subobject of a product.

    ``legs[k]`` is the projection to the ``k``-th factor.  ``tuple_cell`` turns a
    compatible family of cells (one per factor, same level) into a cell of
    ``obj``; ``tuple_map`` does the same for a family of maps.
    """

    def __init__(self, obj, factors, keys):
        self.obj = obj
        self.factors = tuple(factors)
        self.keys = keys
        self.index = {k: i for i, k in enumerate(keys)}
        self.legs = ()

    def tuple_cell(self, cells: Sequence[NormalSimplex]) -> NormalSimplex:
        axes = self.factors[0].axes
        etas, quots = [], [[] for _ in cells]
        for a in range(axes):
            eta, qs = common_epi([c.epis[a] for c in cells])
            etas.append(eta)
            for j, q in enumerate(qs):
                quots[j].append(q)
        key = tuple(NormalSimplex(tuple(q), c.gen) for q, c in zip(quots, cells))
        gid = self.index.get(key)
        if gid is None:
            raise ValueError("cells are not compatible with the limit")
        return NormalSimplex(tuple(etas), gid)

    def tuple_map(self, maps: Sequence[EZMap]) -> EZMap:
        src = maps[0].source
        return EZMap(src, self.obj, [
            self.tuple_cell([m.assignment[g] for m in maps]) for g in src.generators
        ])

    @property
    def pr1(self):
        return self.legs[0]

    @property
    def pr2(self):
        return self.legs[1]


def _jointly_monic_epis(n: int, ks: Sequence[int]) -> Iterator[tuple[OrdinalMap, ...]]:
    for combo in iproduct(*(surjections(n, k) for k in ks)):
        # a shared collapsed step means the tuple factors through a degeneracy
        if n == 0 or all(any(e.values[i] != e.values[i + 1] for e in combo) for i in range(n)):
            yield combo


def limit(objs: Sequence[EZObject], predicate=None, top: int | None = None) -> LimitCone:
    """Product of ``objs`` restricted to cell tuples satisfying ``predicate``.

    ``predicate`` receives the tuple of component cells; it must describe a
    subpresheaf (closed under all simplicial operators), as equalizer
    conditions do.  With ``top`` only generators of total degree ``<= top``
    are kept, which yields the ``top``-skeleton.
    """
    axes = objs[0].axes
    keys = []
    for gens in iproduct(*(list(X.generators) for X in objs)):
        gdims = [X.dims[g] for X, g in zip(objs, gens)]
        floor = [max(d[a] for d in gdims) for a in range(axes)]
        if top is not None and sum(floor) > top:
            continue
        per_axis = []
        for a in range(axes):
            ks = [d[a] for d in gdims]
            opts = []
            hi = sum(ks) if top is None else min(sum(ks), top - sum(floor) + floor[a])
            for n in range(max(ks), hi + 1):
                opts.extend(_jointly_monic_epis(n, ks))
            per_axis.append(opts)
        for choice in iproduct(*per_axis):
            if top is not None and sum(c[0].dom for c in choice) > top:
                continue
            key = tuple(
                NormalSimplex(tuple(choice[a][j] for a in range(axes)), g)
                for j, g in enumerate(gens)
            )
            if predicate is None or predicate(key):
                keys.append(key)
    if len(keys) > max_cells():
        raise ResourceLimit(f"limit has {len(keys)} generators")
    keys.sort(key=lambda k: (sum(k[0].level), k[0].level, k))
    cone = LimitCone(None, objs, keys)
    dims, faces, labels = [], [], []
    for key in keys:
        lvl = key[0].level
        dims.append(lvl)
        fs = []
        for a in range(axes):
            if lvl[a] == 0:
                fs.append(())
                continue
            fs.append(tuple(
                cone.tuple_cell([X.face_of(c, a, i) for X, c in zip(objs, key)])
                for i in range(lvl[a] + 1)
            ))
        faces.append(tuple(fs))
        labels.append("(" + ",".join(_cell_label(X, c) for X, c in zip(objs, key)) + ")")
    obj = make(axes, dims, faces, labels)
    cone.obj = obj
    cone.legs = tuple(EZMap(obj, F, [k[j] for k in keys]) for j, F in enumerate(objs))
    return cone


def _cell_label(X: EZObject, c: NormalSimplex) -> str:
    if c.is_generator():
        return X.labels[c.gen]
    return "s" + ";".join("".join(map(str, e.values)) for e in c.epis) + ":" + X.labels[c.gen]


def product(*objs: EZObject, top: int | None = None) -> LimitCone:
    return limit(objs, top=top)


def pullback(f: EZMap, g: EZMap) -> LimitCone:
    """``X ×_Z Y`` for ``f: X -> Z`` and ``g: Y -> Z``."""
    if f.target is not g.target:
        raise ValueError("pullback legs must share a target")
    return limit([f.source, g.source], lambda k: f.map_cell(k[0]) == g.map_cell(k[1]))


def fiber(f: EZMap, x: int) -> LimitCone:
    """The fiber of ``f: Y -> X`` over the vertex generator ``x`` of ``X``."""
    X = f.target
    if X.dims[x] != (0,) * X.axes:
        raise ValueError(f"{x} is not a vertex")
    pt = point(X.axes)
    vx = EZMap(pt, X, [X.cell(x)])
    return pullback(f, vx)


# ---------------------------------------------------------------------------
# colimits

class Cocone:
    def __init__(self, obj, legs, tags):
        self.obj = obj
        self.legs = tuple(legs)
        self._tags = tags  # per generator of obj: (leg index, generator there)

    def induced(self, maps: Sequence[EZMap]) -> EZMap:
        """The map out of the colimit determined by one map per leg."""
        tgt = maps[0].target
        return EZMap(self.obj, tgt, [maps[k].assignment[g] for k, g in self._tags])


def coproduct(*objs: EZObject) -> Cocone:
    axes = objs[0].axes
    order = []
    for k, X in enumerate(objs):
        for g in X.generators:
            order.append((sum(X.dims[g]), X.dims[g], k, g))
    order.sort()
    new = {(k, g): i for i, (_, _, k, g) in enumerate(order)}
    dims, faces, labels = [], [], []
    for _, d, k, g in order:
        X = objs[k]
        dims.append(d)
        faces.append(tuple(
            tuple(NormalSimplex(c.epis, new[(k, c.gen)]) for c in fa) for fa in X.faces[g]
        ))
        labels.append(f"{k}.{X.labels[g]}")
    obj = make(axes, dims, faces, labels)
    legs = [
        EZMap(X, obj, [obj.cell(new[(k, g)]) for g in X.generators]) for k, X in enumerate(objs)
    ]
    return Cocone(obj, legs, [(k, g) for _, _, k, g in order])


def pushout(f: EZMap, g: EZMap) -> Cocone:
    """``X ⊔_A Y`` for ``f: A -> X`` and ``g: A -> Y``; one leg must be mono.

    ``legs`` are ``(X -> P, Y -> P)`` regardless of which leg was mono.
    """
    if f.source is not g.source:
        raise ValueError("pushout legs must share a source")
    if f.is_mono():
        return _pushout_mono(f, g)
    if g.is_mono():
        c = _pushout_mono(g, f)
        c.legs = (c.legs[1], c.legs[0])
        c._tags = [(1 - k, h) for k, h in c._tags]
        return c
    raise NotImplementedError("pushout requires at least one monomorphic leg")


def _pushout_mono(i: EZMap, g: EZMap) -> Cocone:
    X, Y = i.target, g.target
    axes = X.axes
    inside = {c.gen: a for a, c in enumerate(i.assignment)}
    order = [(sum(Y.dims[h]), Y.dims[h], 0, h) for h in Y.generators]
    order += [(sum(X.dims[h]), X.dims[h], 1, h) for h in X.generators if h not in inside]
    order.sort()
    new = {(k, h): n for n, (_, _, k, h) in enumerate(order)}

    def from_x(c: NormalSimplex) -> NormalSimplex:
        if c.gen in inside:
            img = g.assignment[inside[c.gen]]
            return NormalSimplex(_precompose(img, c.epis).epis, new[(0, img.gen)])
        return NormalSimplex(c.epis, new[(1, c.gen)])

    dims, faces, labels = [], [], []
    for _, d, k, h in order:
        dims.append(d)
        if k == 0:
            faces.append(tuple(
                tuple(NormalSimplex(c.epis, new[(0, c.gen)]) for c in fa) for fa in Y.faces[h]
            ))
            labels.append(Y.labels[h])
        else:
            faces.append(tuple(tuple(from_x(c) for c in fa) for fa in X.faces[h]))
            labels.append("x:" + X.labels[h])
    obj = make(axes, dims, faces, labels)
    legX = EZMap(X, obj, [from_x(X.cell(h)) for h in X.generators])
    legY = EZMap(Y, obj, [obj.cell(new[(0, h)]) for h in Y.generators])
    tags = []
    for _, _, k, h in order:
        tags.append((1, h) if k == 0 else (0, h))
    return Cocone(obj, (legX, legY), tags)


# ---------------------------------------------------------------------------
# hom enumeration and isomorphism search

def hom_enum(
    X: EZObject,
    Y: EZObject,
    *,
    over: tuple[EZMap, EZMap] | None = None,
    fixed: dict[int, NormalSimplex] | None = None,
    prune: Callable[[int, NormalSimplex, list], bool] | None = None,
) -> Iterator[EZMap]:
    """All maps ``X -> Y``, by backtracking over generators in canonical order.

    ``over=(q, b)`` keeps maps ``c`` with ``q ∘ c = b`` (``q: Y -> Z``,
    ``b: X -> Z``); ``fixed`` pins chosen generators; ``prune(g, cell, partial)``
    may veto a candidate.
    """
    gens = list(X.generators)
    fixed = fixed or {}
    assign: list = [None] * len(gens)

    def candidates(g):
        gd = X.dims[g]
        want = fixed.get(g)
        if any(gd):
            key = tuple(
                tuple(_precompose(assign[c.gen], c.epis) for c in fa) if gd[a] > 0 else ()
                for a, fa in enumerate(X.faces[g])
            )
            if want is not None:
                return [want] if Y.face_key(want) == key else []
            pool = Y.face_index(gd).get(key, ())
        else:
            if want is not None:
                return [want]
            pool = Y.levels(gd)
        return pool

    def rec(k):
        if k == len(gens):
            yield EZMap(X, Y, assign)
            return
        g = gens[k]
        target_cell = over[1].assignment[g] if over is not None else None
        for y in candidates(g):
            if over is not None and over[0].map_cell(y) != target_cell:
                continue
            if prune is not None and not prune(g, y, assign):
                continue
            assign[g] = y
            yield from rec(k + 1)
        assign[g] = None

    return rec(0)


def find_isomorphism(
    X: EZObject, Y: EZObject, over: tuple[EZMap, EZMap] | None = None
) -> EZMap | None:
    """Search for an isomorphism ``X -> Y`` (commuting with ``over=(pX, pY)``)."""
    if sorted(X.dims) != sorted(Y.dims) or X.axes != Y.axes:
        return None
    order = sorted(X.generators, key=lambda g: (-sum(X.dims[g]), g))

    def compatible(g, h):
        if X.dims[g] != Y.dims[h]:
            return False
        if over is not None and over[0].assignment[g] != over[1].assignment[h]:
            return False
        return True

    def force(g, h, phi, inv):
        # assign g -> h and propagate through faces; False on conflict
        stack = [(g, h)]
        while stack:
            a, b = stack.pop()
            if a in phi:
                if phi[a] != b:
                    return False
                continue
            if b in inv or not compatible(a, b):
                return False
            phi[a] = b
            inv[b] = a
            for fa, fb in zip(X.faces[a], Y.faces[b]):
                for ca, cb in zip(fa, fb):
                    if ca.epis != cb.epis:
                        return False
                    stack.append((ca.gen, cb.gen))
        return True

    def rec(k, phi, inv):
        while k < len(order) and order[k] in phi:
            k += 1
        if k == len(order):
            return dict(phi)
        g = order[k]
        for h in Y.generators_of(X.dims[g]):
            if h in inv:
                continue
            p2, i2 = dict(phi), dict(inv)
            if force(g, h, p2, i2):
                found = rec(k + 1, p2, i2)
                if found is not None:
                    return found
        return None

    phi = rec(0, {}, {})
    if phi is None:
        return None
    return EZMap(X, Y, [Y.cell(phi[g]) for g in X.generators])


def isomorphic(X: EZObject, Y: EZObject) -> bool:
    return find_isomorphism(X, Y) is not None
