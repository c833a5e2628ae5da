"""Finite categories, set-valued functors and their nerves."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product as iproduct
from typing import Hashable, Mapping, Sequence

from .bisset import disc
from .ez import EZMap, FinBiSet, FinSSet, NormalSimplex
from .ordinal import OrdinalMap


class CategoryError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    src: str
    tgt: str


class FinCat:
    """A finite category given by its full composition table.

    ``compose[(g, f)]`` is ``g ∘ f`` for every composable pair of arrow names.
    """

    def __init__(
        self,
        objects: Sequence[str],
        arrows: Sequence[Arrow],
        identities: Mapping[str, str],
        composition: Mapping[tuple[str, str], str],
        name: str = "",
    ):
        self.objects = tuple(objects)
        self.arrows = tuple(arrows)
        self.identities = dict(identities)
        self.composition = dict(composition)
        self.name = name
        self.arrow = {a.name: a for a in self.arrows}
        self.validate()

    def __repr__(self):
        return f"FinCat({self.name or '?'}: {len(self.objects)} objects, {len(self.arrows)} arrows)"

    def src(self, a: str) -> str:
        return self.arrow[a].src

    def tgt(self, a: str) -> str:
        return self.arrow[a].tgt

    def hom(self, x: str, y: str) -> list[str]:
        return [a.name for a in self.arrows if a.src == x and a.tgt == y]

    def compose(self, g: str, f: str) -> str:
        return self.composition[(g, f)]

    def is_identity(self, a: str) -> bool:
        return self.identities[self.src(a)] == a

    def validate(self) -> None:
        obs = set(self.objects)
        if len(obs) != len(self.objects) or len(self.arrow) != len(self.arrows):
            raise CategoryError("duplicate object or arrow names")
        for a in self.arrows:
            if a.src not in obs or a.tgt not in obs:
                raise CategoryError(f"arrow {a.name} has an unknown endpoint")
        for x in self.objects:
            i = self.identities.get(x)
            if i is None or self.src(i) != x or self.tgt(i) != x:
                raise CategoryError(f"bad identity at {x}")
        for f in self.arrows:
            for g in self.arrows:
                if f.tgt != g.src:
                    continue
                gf = self.composition.get((g.name, f.name))
                if gf is None or self.src(gf) != f.src or self.tgt(gf) != g.tgt:
                    raise CategoryError(f"composite {g.name}∘{f.name} missing or ill-typed")
        for f in self.arrows:
            if self.compose(self.identities[f.tgt], f.name) != f.name:
                raise CategoryError(f"left identity law fails at {f.name}")
            if self.compose(f.name, self.identities[f.src]) != f.name:
                raise CategoryError(f"right identity law fails at {f.name}")
        for f in self.arrows:
            for g in self.arrows:
                if f.tgt != g.src:
                    continue
                for h in self.arrows:
                    if g.tgt != h.src:
                        continue
                    hg_f = self.compose(self.compose(h.name, g.name), f.name)
                    h_gf = self.compose(h.name, self.compose(g.name, f.name))
                    if hg_f != h_gf:
                        raise CategoryError(f"associativity fails at {h.name},{g.name},{f.name}")

    def non_identity_cycle(self) -> bool:
        """Whether chains of non-identity arrows have unbounded length."""
        succ: dict = {x: set() for x in self.objects}
        for a in self.arrows:
            if not self.is_identity(a.name):
                succ[a.src].add(a.tgt)
        state: dict = {}

        def visit(x):
            state[x] = 1
            for y in succ[x]:
                if state.get(y) == 1 or (y not in state and visit(y)):
                    return True
            state[x] = 2
            return False

        return any(x not in state and visit(x) for x in self.objects)

    def longest_chain(self) -> int:
        if self.non_identity_cycle():
            raise CategoryError("chains of non-identity arrows are unbounded")
        best: dict = {}

        def depth(x):
            if x not in best:
                best[x] = max((1 + depth(a.tgt) for a in self.arrows
                               if a.src == x and not self.is_identity(a.name)), default=0)
            return best[x]

        return max((depth(x) for x in self.objects), default=0)

    def is_invertible(self, a: str) -> bool:
        f = self.arrow[a]
        return any(
            self.is_identity(self.compose(g, a)) and self.is_identity(self.compose(a, g))
            for g in self.hom(f.tgt, f.src)
        )


def isomorphism(C: FinCat, D: FinCat) -> dict | None:
    """A pair of bijections ``(objects, arrows)`` preserving the structure, if any."""
    if len(C.objects) != len(D.objects) or len(C.arrows) != len(D.arrows):
        return None
    for perm in permutations(D.objects):
        om = dict(zip(C.objects, perm))
        if any(len(C.hom(x, y)) != len(D.hom(om[x], om[y])) for x in C.objects for y in C.objects):
            continue
        pairs = [(x, y) for x in C.objects for y in C.objects if C.hom(x, y)]
        choices = [permutations(D.hom(om[x], om[y])) for x, y in pairs]
        for pick in iproduct(*choices):
            am = {}
            for (x, y), imgs in zip(pairs, pick):
                am.update(zip(C.hom(x, y), imgs))
            if all(am[C.identities[x]] == D.identities[om[x]] for x in C.objects) and all(
                am[gf] == D.compose(am[g], am[f]) for (g, f), gf in C.composition.items()
            ):
                return {"objects": om, "arrows": am}
    return None


# ---------------------------------------------------------------------------
# factories

def _table(objects, arrows, comp_fn, name):
    arrs = [Arrow(*a) for a in arrows]
    ids = {x: f"id{x}" for x in objects}
    arrs = [Arrow(f"id{x}", x, x) for x in objects] + arrs
    comp = {}
    by = {a.name: a for a in arrs}
    for f in arrs:
        for g in arrs:
            if f.tgt != g.src:
                continue
            if g.name == ids[g.src]:
                comp[(g.name, f.name)] = f.name
            elif f.name == ids[f.src]:
                comp[(g.name, f.name)] = g.name
            else:
                comp[(g.name, f.name)] = comp_fn(g.name, f.name, by)
    return FinCat(objects, arrs, ids, comp, name)


def poset(elements: Sequence[str], leq: set[tuple[str, str]], name: str = "") -> FinCat:
    """The poset category; ``leq`` is reflexive-transitive closed by this function."""
    rel = set(leq) | {(x, x) for x in elements}
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            for c, d in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    for a, b in rel:
        if a != b and (b, a) in rel:
            raise CategoryError("relation is not antisymmetric")
    arrows = sorted((f"{a}<{b}", a, b) for a, b in rel if a != b)
    ids = {x: f"id{x}" for x in elements}

    def comp(g, f, by):
        a, b = by[f].src, by[g].tgt
        return ids[a] if a == b else f"{a}<{b}"

    return _table(list(elements), arrows, comp, name or "poset")


def ordinal_cat(n: int) -> FinCat:
    """``[n]`` as a category."""
    els = [str(i) for i in range(n + 1)]
    return poset(els, {(els[i], els[i + 1]) for i in range(n)}, f"[{n}]")


def discrete_cat(k: int) -> FinCat:
    return poset([f"x{i}" for i in range(k)], set(), f"discrete{k}")


def cyclic_group(n: int) -> FinCat:
    """ℤ/n as a one-object groupoid; arrow ``g{k}`` is ``k``."""
    arrows = [(f"g{k}", "*", "*") for k in range(1, n)]

    def comp(g, f, by):
        k = (int(g[1:]) + int(f[1:])) % n
        return "id*" if k == 0 else f"g{k}"

    return _table(["*"], arrows, comp, f"Z/{n}")


def monoid(elements: Sequence[str], table: Mapping[tuple[str, str], str], unit: str, name: str = "") -> FinCat:
    """One-object category from a multiplication table ``table[(g, f)] = g·f``."""
    arrows = [(e, "*", "*") for e in elements if e != unit]

    def comp(g, f, by):
        r = table[(g, f)]
        return "id*" if r == unit else r

    return _table(["*"], arrows, comp, name or "monoid")


def iso_pair() -> FinCat:
    """Two objects joined by an inverse pair of arrows."""
    arrows = [("u", "a", "b"), ("v", "b", "a")]

    def comp(g, f, by):
        return "ida" if by[f].src == "a" else "idb"

    return _table(["a", "b"], arrows, comp, "iso")


def parallel_pair() -> FinCat:
    arrows = [("f", "0", "1"), ("g", "0", "1")]
    return _table(["0", "1"], arrows, lambda g, f, by: None, "parallel")


def coproduct_cat(*cats: FinCat) -> FinCat:
    objects, arrows, ids, comp = [], [], {}, {}
    for k, C in enumerate(cats):
        pre = f"{k}."
        objects += [pre + x for x in C.objects]
        arrows += [Arrow(pre + a.name, pre + a.src, pre + a.tgt) for a in C.arrows]
        ids.update({pre + x: pre + i for x, i in C.identities.items()})
        comp.update({(pre + g, pre + f): pre + gf for (g, f), gf in C.composition.items()})
    return FinCat(objects, arrows, ids, comp, "+".join(c.name for c in cats))


# ---------------------------------------------------------------------------
# functors

@dataclass
class SetFunctor:
    """A functor ``C -> FinSet``; ``maps[a][e]`` is the image of ``e`` along ``a``.

    With ``contravariant`` set, ``maps[a]`` goes from the set at the target of
    ``a`` to the set at its source (a presheaf).
    """

    category: FinCat
    sets: dict[str, list[Hashable]]
    maps: dict[str, dict[Hashable, Hashable]]
    contravariant: bool = False

    def validate(self) -> None:
        C = self.category
        for a in C.arrows:
            dom, cod = (a.tgt, a.src) if self.contravariant else (a.src, a.tgt)
            m = self.maps.get(a.name)
            if m is None or set(m) != set(self.sets[dom]):
                raise CategoryError(f"functor undefined on {a.name}")
            if any(v not in self.sets[cod] for v in m.values()):
                raise CategoryError(f"functor image of {a.name} leaves its target")
        for x in C.objects:
            if any(self.maps[C.identities[x]][e] != e for e in self.sets[x]):
                raise CategoryError(f"identity at {x} not preserved")
        for (g, f), gf in C.composition.items():
            if self.contravariant:
                for e in self.sets[C.tgt(g)]:
                    if self.maps[f][self.maps[g][e]] != self.maps[gf][e]:
                        raise CategoryError(f"composition {g}∘{f} not preserved")
            else:
                for e in self.sets[C.src(f)]:
                    if self.maps[g][self.maps[f][e]] != self.maps[gf][e]:
                        raise CategoryError(f"composition {g}∘{f} not preserved")

    def __call__(self, a: str, e):
        return self.maps[a][e]


def representable_functor(C: FinCat, x: str) -> SetFunctor:
    """``Hom(x, -)``."""
    sets = {y: C.hom(x, y) for y in C.objects}
    maps = {a.name: {f: C.compose(a.name, f) for f in sets[a.src]} for a in C.arrows}
    return SetFunctor(C, sets, maps)


def corepresented_presheaf(C: FinCat, x: str) -> SetFunctor:
    """``Hom(-, x)`` as a presheaf."""
    sets = {y: C.hom(y, x) for y in C.objects}
    maps = {a.name: {f: C.compose(f, a.name) for f in sets[a.tgt]} for a in C.arrows}
    return SetFunctor(C, sets, maps, contravariant=True)


def constant_functor(C: FinCat, values: Sequence[Hashable]) -> SetFunctor:
    vals = list(values)
    return SetFunctor(C, {x: vals for x in C.objects},
                      {a.name: {v: v for v in vals} for a in C.arrows})


@dataclass
class CatFunctor:
    source: FinCat
    target: FinCat
    on_objects: dict[str, str]
    on_arrows: dict[str, str]

    def validate(self) -> None:
        C, D = self.source, self.target
        for a in C.arrows:
            b = D.arrow[self.on_arrows[a.name]]
            if b.src != self.on_objects[a.src] or b.tgt != self.on_objects[a.tgt]:
                raise CategoryError(f"{a.name} is sent to an arrow with the wrong endpoints")
        for x in C.objects:
            if self.on_arrows[C.identities[x]] != D.identities[self.on_objects[x]]:
                raise CategoryError(f"identity at {x} not preserved")
        for (g, f), gf in C.composition.items():
            if D.compose(self.on_arrows[g], self.on_arrows[f]) != self.on_arrows[gf]:
                raise CategoryError(f"composition {g}∘{f} not preserved")


def restrict_functor(F: SetFunctor, G: CatFunctor) -> SetFunctor:
    """``F ∘ G``."""
    C = G.source
    return SetFunctor(
        C,
        {x: F.sets[G.on_objects[x]] for x in C.objects},
        {a.name: dict(F.maps[G.on_arrows[a.name]]) for a in C.arrows},
    )


# ---------------------------------------------------------------------------
# nerves

class Nerve:
    """The nerve of ``C``, keeping non-degenerate chains of length ``<= top``.

    ``obj`` is a FinSSet; for categories with a non-identity cycle the nerve is
    infinite and ``top`` must be given, so ``obj`` is its ``top``-skeleton.
    """

    def __init__(self, C: FinCat, top: int | None = None):
        self.category = C
        if top is None:
            top = C.longest_chain()
        self.top = top
        # a chain is its first object followed by its arrows
        chains: list = [(x,) for x in C.objects]
        keys = list(chains)
        for n in range(1, top + 1):
            chains = [
                ch + (a.name,) for ch in chains for a in C.arrows
                if a.src == self._end(ch) and not C.is_identity(a.name)
            ]
            keys.extend(chains)
        self.keys = keys
        self.index = {k: g for g, k in enumerate(keys)}
        dims, faces, labels = [], [], []
        for k in keys:
            n = self.degree(k)
            dims.append((n,))
            faces.append((tuple(self.face(k, i) for i in range(n + 1)) if n else (),))
            labels.append("|".join(k))
        self.obj = FinSSet(dims, faces, labels)

    def _end(self, key) -> str:
        return key[0] if len(key) == 1 else self.category.tgt(key[-1])

    @staticmethod
    def degree(key) -> int:
        return len(key) - 1

    def vertices_of(self, key) -> list[str]:
        return [key[0]] + [self.category.tgt(a) for a in key[1:]]

    def chain_cell(self, objs: Sequence[str], arrows: Sequence[str]) -> NormalSimplex:
        """Normal form of the chain ``objs[0] -arrows[0]-> objs[1] -> ...``."""
        C = self.category
        keep = [a for a in arrows if not C.is_identity(a)]
        vals, v = [0], 0
        for a in arrows:
            if not C.is_identity(a):
                v += 1
            vals.append(v)
        key = (objs[0],) + tuple(keep)
        gid = self.index.get(key)
        if gid is None:
            raise KeyError("chain is longer than the truncation")
        return NormalSimplex((OrdinalMap(tuple(vals), v),), gid)

    def act(self, tau: OrdinalMap, key) -> NormalSimplex:
        C = self.category
        vs = self.vertices_of(key)
        arrows = key[1:]
        objs = [vs[t] for t in tau.values]
        out = []
        for a, b in zip(tau.values, tau.values[1:]):
            f = C.identities[vs[a]]
            for k in range(a, b):
                f = C.compose(arrows[k], f)
            out.append(f)
        return self.chain_cell(objs, out)

    def face(self, key, i: int) -> NormalSimplex:
        n = self.degree(key)
        return self.act(OrdinalMap(tuple(k for k in range(n + 1) if k != i), n), key)

    def cell_chain(self, cell: NormalSimplex) -> tuple[list[str], list[str]]:
        """``(objects, arrows)`` of a cell, identities included."""
        key = self.keys[cell.gen]
        C = self.category
        vs = self.vertices_of(key)
        arrows = key[1:]
        eta = cell.epis[0]
        objs = [vs[t] for t in eta.values]
        out = [arrows[eta(j)] if eta(j + 1) != eta(j) else C.identities[objs[j]]
               for j in range(eta.dom)]
        return objs, out


def nerve(C: FinCat, top: int | None = None) -> FinSSet:
    return nerve_data(C, top).obj


_NERVES: dict = {}


def nerve_data(C: FinCat, top: int | None = None) -> Nerve:
    key = (id(C), top)
    hit = _NERVES.get(key)
    if hit is None or hit[0] is not C:
        hit = (C, Nerve(C, top))
        _NERVES[key] = hit
    return hit[1]


def disc_nerve(C: FinCat, top: int | None = None) -> FinBiSet:
    N = nerve_data(C, top)
    X = disc(N.obj)
    X.__dict__["nerve"] = N
    return X


def nerve_map(G: CatFunctor, top: int | None = None, target_top: int | None = None) -> EZMap:
    """``N(G) : N(C) -> N(D)``."""
    NC = nerve_data(G.source, top)
    ND = nerve_data(G.target, target_top if target_top is not None else top)
    out = []
    for g in NC.obj.generators:
        objs, arrows = NC.cell_chain(NC.obj.cell(g))
        out.append(ND.chain_cell([G.on_objects[x] for x in objs], [G.on_arrows[a] for a in arrows]))
    return EZMap(NC.obj, ND.obj, out)
