"""Objects given by a level oracle and an operator action, materialized on demand."""
from __future__ import annotations

from itertools import product as iproduct
from typing import Callable, Hashable, Iterable, Sequence

from .ez import EZMap, EZObject, InvariantViolation, NormalSimplex, ResourceLimit, make, max_cells
from .ordinal import OrdinalMap, compose, degeneracy, enumerate_maps, face, identity


class VirtualObject:
    """A (bi)simplicial set known only through ``level(dims)`` and ``act(taus, cell)``.

    Queried levels are cached.  Each newly queried level is checked for
    closure and functoriality against the levels below it.
    """

    def __init__(
        self,
        axes: int,
        level: Callable[[tuple[int, ...]], Iterable[Hashable]],
        act: Callable[[tuple[OrdinalMap, ...], Hashable], Hashable],
        name: str = "virtual",
        check: bool = True,
    ):
        self.axes = axes
        self._level = level
        self._act = act
        self.name = name
        self.check = check
        self._cache: dict = {}
        self._act_cache: dict = {}

    def level(self, dims: Sequence[int]) -> list:
        dims = tuple(dims)
        hit = self._cache.get(dims)
        if hit is None:
            hit = list(self._level(dims))
            if len(hit) > max_cells():
                raise ResourceLimit(f"{self.name} level {dims} has {len(hit)} cells")
            self._cache[dims] = hit
            if self.check:
                self._verify(dims, hit)
        return hit

    def act(self, taus: Sequence[OrdinalMap], cell: Hashable) -> Hashable:
        key = (tuple(taus), cell)
        hit = self._act_cache.get(key)
        if hit is None:
            hit = self._act_cache[key] = self._act(tuple(taus), cell)
        return hit

    def _verify(self, dims, cells):
        # closure under faces and the identity law, then σ^*τ^* = (τσ)^* on cofaces/codegeneracies
        ids = tuple(identity(d) for d in dims)
        for c in cells:
            if self.act(ids, c) != c:
                raise InvariantViolation(f"{self.name}: identity does not act trivially at {dims}")
        for a in range(self.axes):
            if dims[a] == 0:
                continue
            lower = list(dims)
            lower[a] -= 1
            below = set(self.level(tuple(lower)))
            for c in cells:
                for i in range(dims[a] + 1):
                    if self._face(c, a, i, dims) not in below:
                        raise InvariantViolation(f"{self.name}: face leaves the level set at {dims}")
            # d_i d_j = d_{j-1} d_i on each queried cell
            if dims[a] >= 2:
                for c in cells[:50]:
                    for i in range(dims[a] + 1):
                        for j in range(i + 1, dims[a] + 1):
                            lhs = self._face(self._face(c, a, j, dims), a, i, tuple(lower))
                            rhs = self._face(self._face(c, a, i, dims), a, j - 1, tuple(lower))
                            if lhs != rhs:
                                raise InvariantViolation(f"{self.name}: simplicial identity fails")

    def _op(self, a, tau, dims):
        return tuple(tau if k == a else identity(dims[k]) for k in range(self.axes))

    def _face(self, c, a, i, dims):
        return self.act(self._op(a, face(i, dims[a]), dims), c)

    def check_functorial(self, dims: Sequence[int], depth: int = 2) -> bool:
        """Exhaustive ``(τσ)^* = σ^* τ^*`` for operators into ``dims`` from levels ``≤ depth``."""
        dims = tuple(dims)
        for cell in self.level(dims):
            for mid in iproduct(*(range(depth + 1) for _ in dims)):
                for taus in iproduct(*(enumerate_maps(m, d) for m, d in zip(mid, dims))):
                    y = self.act(taus, cell)
                    for low in iproduct(*(range(depth + 1) for _ in dims)):
                        for sig in iproduct(*(enumerate_maps(l, m) for l, m in zip(low, mid))):
                            comp = tuple(compose(t, s) for t, s in zip(taus, sig))
                            if self.act(sig, y) != self.act(comp, cell):
                                return False
        return True

    def materialize(self, bound: Sequence[int] | int) -> "Materialized":
        return Materialized(self, bound)


class Materialized:
    """The finite object generated by the non-degenerate cells within ``bound``.

    ``bound`` is either a total-degree bound or a per-axis tuple.  Cells at
    levels inside the bound are faithfully represented.
    """

    def __init__(self, V: VirtualObject, bound):
        self.virtual = V
        axes = V.axes
        if isinstance(bound, int):
            shapes = [d for d in iproduct(*(range(bound + 1) for _ in range(axes))) if sum(d) <= bound]
        else:
            shapes = list(iproduct(*(range(b + 1) for b in bound)))
        shapes.sort(key=lambda d: (sum(d), d))
        self.shapes = shapes
        self._norm: dict = {}
        keys = []
        for d in shapes:
            for c in V.level(d):
                if self._collapse(c, d) is None:
                    keys.append((d, c))
        if len(keys) > max_cells():
            raise ResourceLimit(f"{V.name} has {len(keys)} generators within the bound")
        self.keys = keys
        self.index = {kc: g for g, kc in enumerate(keys)}
        dims, faces = [], []
        for d, c in keys:
            dims.append(d)
            fs = []
            for a in range(axes):
                if d[a] == 0:
                    fs.append(())
                    continue
                low = list(d)
                low[a] -= 1
                fs.append(tuple(self.normalize(V._face(c, a, i, d), tuple(low)) for i in range(d[a] + 1)))
            faces.append(tuple(fs))
        self.obj = make(axes, dims, faces, [str(c) for _, c in keys])

    def _collapse(self, c, d):
        V = self.virtual
        for a in range(V.axes):
            for j in range(d[a]):
                y = V.act(V._op(a, face(j, d[a]), d), c)
                low = list(d)
                low[a] -= 1
                if V.act(V._op(a, degeneracy(j, d[a] - 1), tuple(low)), y) == c:
                    return a, j, y, tuple(low)
        return None

    def normalize(self, c, dims: Sequence[int]) -> NormalSimplex:
        """The normal form of the virtual cell ``c`` at level ``dims``."""
        dims = tuple(dims)
        key = (dims, c)
        hit = self._norm.get(key)
        if hit is not None:
            return hit
        gid = self.index.get(key)
        if gid is not None:
            out = NormalSimplex(tuple(identity(d) for d in dims), gid)
        else:
            hit = self._collapse(c, dims)
            if hit is None:
                raise KeyError(f"non-degenerate cell at {dims} lies outside the materialized bound")
            a, j, y, low = hit
            inner = self.normalize(y, low)
            epis = list(inner.epis)
            epis[a] = compose(epis[a], degeneracy(j, low[a]))
            out = NormalSimplex(tuple(epis), inner.gen)
        self._norm[key] = out
        return out

    def cell(self, s: NormalSimplex):
        """The virtual cell represented by a normal simplex."""
        d, c = self.keys[s.gen]
        return self.virtual.act(tuple(s.epis), c)


def map_into(X: EZObject, M: Materialized, fn: Callable[[NormalSimplex], Hashable]) -> EZMap:
    """The map ``X -> M.obj`` sending each generator to the normal form of ``fn(generator)``."""
    return EZMap(X, M.obj, [M.normalize(fn(X.cell(g)), X.dims[g]) for g in X.generators])
