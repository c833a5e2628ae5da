"""The simplex category: monotone maps of finite ordinals.

An object ``[n]`` is represented by the integer ``n``; an arrow ``[n] -> [m]``
by the tuple of its values.  Value tuples are compared lexicographically and
that order is the canonical enumeration order used throughout the package.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator, NamedTuple, Sequence


class DimensionError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class OrdinalMap:
    """A weakly increasing map ``[dom] -> [cod]``."""

    values: tuple[int, ...]
    cod: int

    def __post_init__(self):
        vals = self.values
        if not isinstance(vals, tuple):
            object.__setattr__(self, "values", vals := tuple(vals))
        if not vals:
            raise DimensionError("an ordinal map needs at least one value")
        prev = 0
        for v in vals:
            if v < prev or v > self.cod:
                raise DimensionError(f"not a monotone map into [{self.cod}]: {vals}")
            prev = v

    @property
    def dom(self) -> int:
        return len(self.values) - 1

    def __call__(self, i: int) -> int:
        return self.values[i]

    def __matmul__(self, other: "OrdinalMap") -> "OrdinalMap":
        return compose(self, other)

    def __repr__(self):
        return f"OrdinalMap({list(self.values)}->[{self.cod}])"

    def is_identity(self) -> bool:
        return self.dom == self.cod and self.values == tuple(range(self.cod + 1))

    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    def is_surjective(self) -> bool:
        return self.values[0] == 0 and self.values[-1] == self.cod and all(
            b - a <= 1 for a, b in zip(self.values, self.values[1:])
        )

    def image(self) -> frozenset[int]:
        return frozenset(self.values)


def _fast(values: tuple[int, ...], cod: int) -> OrdinalMap:
    # skips validation; callers guarantee monotone values in range
    obj = object.__new__(OrdinalMap)
    object.__setattr__(obj, "values", values)
    object.__setattr__(obj, "cod", cod)
    return obj


def compose(g: OrdinalMap, f: OrdinalMap) -> OrdinalMap:
    """Return ``g ∘ f``."""
    if f.cod != g.dom:
        raise DimensionError(f"cannot compose {g!r} after {f!r}")
    gv = g.values
    return _fast(tuple(gv[i] for i in f.values), g.cod)


@lru_cache(maxsize=None)
def identity(n: int) -> OrdinalMap:
    return _fast(tuple(range(n + 1)), n)


def face(i: int, n: int) -> OrdinalMap:
    """The coface ``d^i : [n-1] -> [n]`` missing ``i``."""
    if n < 1 or not 0 <= i <= n:
        raise DimensionError(f"face index {i} out of range for [{n}]")
    return _fast(tuple(k for k in range(n + 1) if k != i), n)


def face_pair(i: int, j: int, n: int) -> OrdinalMap:
    """``d^{i,j} : [n-2] -> [n]`` missing both ``i < j``."""
    if n < 2 or not 0 <= i < j <= n:
        raise DimensionError(f"face indices {i},{j} out of range for [{n}]")
    return _fast(tuple(k for k in range(n + 1) if k not in (i, j)), n)


def degeneracy(i: int, n: int) -> OrdinalMap:
    """The codegeneracy ``s^i : [n+1] -> [n]`` hitting ``i`` twice."""
    if n < 0 or not 0 <= i <= n:
        raise DimensionError(f"degeneracy index {i} out of range for [{n}]")
    return _fast(tuple(k if k <= i else k - 1 for k in range(n + 2)), n)


def delta_tuple(ks: Sequence[int], n: int) -> OrdinalMap:
    """``δ^{k_0,...,k_m} : [m] -> [n]``."""
    return OrdinalMap(tuple(ks), n)


def shift(i: int, m: int, n: int) -> OrdinalMap:
    """``e^i : [m] -> [n]``, ``k -> k + i``."""
    if not 0 <= i <= n - m:
        raise DimensionError(f"shift {i} of [{m}] does not fit in [{n}]")
    return _fast(tuple(range(i, i + m + 1)), n)


def constant(value: int, n: int, m: int) -> OrdinalMap:
    return OrdinalMap((value,) * (n + 1), m)


def opposite(tau: OrdinalMap) -> OrdinalMap:
    """The reversal ``ι(τ)(n-i) = m - τ(i)``."""
    m = tau.cod
    return _fast(tuple(m - v for v in reversed(tau.values)), m)


def twist(tau: OrdinalMap) -> OrdinalMap:
    """The twisted-arrow endofunctor ``[n] -> [2n+1]``: reversed copy, then a shifted copy."""
    m = tau.cod
    left = tuple(m - v for v in reversed(tau.values))
    right = tuple(m + 1 + v for v in tau.values)
    return _fast(left + right, 2 * m + 1)


def cone(tau: OrdinalMap) -> OrdinalMap:
    """``τ' : [n+1] -> [m+1]`` with ``τ'(0) = 0`` and ``τ'(i+1) = τ(i) + 1``."""
    return _fast((0,) + tuple(v + 1 for v in tau.values), tau.cod + 1)


def epi_mono_factor(tau: OrdinalMap) -> tuple[OrdinalMap, OrdinalMap]:
    """Split ``τ`` as ``mono ∘ epi``; returns ``(epi, mono)``."""
    image = sorted(set(tau.values))
    rank = {v: k for k, v in enumerate(image)}
    k = len(image) - 1
    epi = _fast(tuple(rank[v] for v in tau.values), k)
    mono = _fast(tuple(image), tau.cod)
    return epi, mono


@lru_cache(maxsize=None)
def enumerate_maps(n: int, m: int) -> tuple[OrdinalMap, ...]:
    """All monotone maps ``[n] -> [m]`` in lexicographic order."""
    out = []

    def rec(prefix: list[int], lo: int):
        if len(prefix) == n + 1:
            out.append(_fast(tuple(prefix), m))
            return
        for v in range(lo, m + 1):
            prefix.append(v)
            rec(prefix, v)
            prefix.pop()

    rec([], 0)
    return tuple(out)


@lru_cache(maxsize=None)
def surjections(n: int, k: int) -> tuple[OrdinalMap, ...]:
    """All epis ``[n] ->> [k]``, lexicographic."""
    if k > n or k < 0:
        return ()
    out = []
    # choose which k of the n adjacent steps increase
    for steps in combinations(range(n), k):
        vals, v, s = [0], 0, set(steps)
        for pos in range(n):
            if pos in s:
                v += 1
            vals.append(v)
        out.append(_fast(tuple(vals), k))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def injections(k: int, n: int) -> tuple[OrdinalMap, ...]:
    """All monos ``[k] >-> [n]``, lexicographic."""
    return tuple(_fast(c, n) for c in combinations(range(n + 1), k + 1))


def missing(tau: OrdinalMap) -> list[int]:
    img = set(tau.values)
    return [v for v in range(tau.cod + 1) if v not in img]


def strip_face(mono: OrdinalMap) -> tuple[int, OrdinalMap]:
    """For a non-identity mono, return ``(i, rest)`` with ``mono = d^i ∘ rest``."""
    i = missing(mono)[-1]
    rest = _fast(tuple(v if v < i else v - 1 for v in mono.values), mono.cod - 1)
    return i, rest


def collapsed_steps(epi: OrdinalMap) -> list[int]:
    """Positions ``i`` where ``epi(i) == epi(i+1)``."""
    v = epi.values
    return [i for i in range(len(v) - 1) if v[i] == v[i + 1]]


def common_epi(epis: Sequence[OrdinalMap]) -> tuple[OrdinalMap, tuple[OrdinalMap, ...]]:
    """Largest epi ``η`` through which every map in ``epis`` factors.

    Returns ``(η, quotients)`` with ``epis[k] = quotients[k] ∘ η``.  All maps
    share a domain.
    """
    n = epis[0].dom
    shared = [i for i in range(n) if all(e.values[i] == e.values[i + 1] for e in epis)]
    if not shared:
        return identity(n), tuple(epis)
    s = set(shared)
    vals, v = [0], 0
    for pos in range(n):
        if pos not in s:
            v += 1
        vals.append(v)
    eta = _fast(tuple(vals), v)
    # representative point of each fiber of eta
    reps = []
    for pos, val in enumerate(vals):
        if len(reps) == val:
            reps.append(pos)
    quotients = tuple(_fast(tuple(e.values[p] for p in reps), e.cod) for e in epis)
    return eta, quotients


class BiOrdinalMap(NamedTuple):
    """An arrow ``[n',m'] -> [n,m]`` of Δ×Δ."""

    first: OrdinalMap
    second: OrdinalMap

    def __matmul__(self, other: "BiOrdinalMap") -> "BiOrdinalMap":
        return BiOrdinalMap(compose(self.first, other.first), compose(self.second, other.second))


def maps_between(dom: Sequence[int], cod: Sequence[int]) -> Iterator[tuple[OrdinalMap, ...]]:
    """All tuples of ordinal maps, one per axis, in lexicographic order."""
    def rec(k):
        if k == len(dom):
            yield ()
            return
        for t in enumerate_maps(dom[k], cod[k]):
            for rest in rec(k + 1):
                yield (t,) + rest
    return rec(0)
