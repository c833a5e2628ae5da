"""The default corpus: small categories, functors, chains, maps and bisimplicial sets.

Everything random is drawn from a ``random.Random`` seeded by the caller, so a
seed fixes the corpus completely.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path

from .bisset import F, box, boundary_box, constant, dF, disc
from .category import (
    FinCat,
    SetFunctor,
    constant_functor,
    coproduct_cat,
    cyclic_group,
    discrete_cat,
    iso_pair,
    monoid,
    ordinal_cat,
    parallel_pair,
    poset,
    representable_functor,
)
from .cylinder import ChainOverB
from .ez import EZMap, EZObject, coproduct, hom_enum
from .sset import boundary, horn, standard


def categories() -> dict[str, FinCat]:
    pt = ordinal_cat(0)
    return {
        "path0": pt,
        "path1": ordinal_cat(1),
        "path2": ordinal_cat(2),
        "discrete2": discrete_cat(2),
        "vee": poset(["0", "1", "2"], {("0", "1"), ("0", "2")}, "V"),
        "zigzag": poset(["0", "1", "2"], {("0", "1"), ("2", "1")}, "zigzag"),
        "z2": cyclic_group(2),
        "z3": cyclic_group(3),
        "iso": iso_pair(),
        "z2_plus_pt": coproduct_cat(cyclic_group(2), pt),
        "idempotent": monoid(["1", "e"], {("e", "e"): "e"}, "1", "idempotent"),
        "parallel": parallel_pair(),
    }


GROUPOIDS = ("z2", "z3", "iso", "z2_plus_pt")


def is_poset(C: FinCat) -> bool:
    return all(len(C.hom(x, y)) <= 1 for x in C.objects for y in C.objects) and not C.non_identity_cycle()


def is_groupoid(C: FinCat) -> bool:
    return all(C.is_invertible(a.name) for a in C.arrows)


def functors(C: FinCat) -> list[tuple[str, SetFunctor]]:
    """Covariant functors with at most three elements per object."""
    out = []
    for x in C.objects:
        Fn = representable_functor(C, x)
        if max(len(v) for v in Fn.sets.values()) <= 3:
            out.append((f"hom({x},-)", Fn))
    out.append(("const2", constant_functor(C, ["p", "q"])))
    return out


# -- random chains over a base ---------------------------------------------

def _pool() -> list[tuple[str, EZObject]]:
    pt = standard(0)
    return [
        ("D0", pt),
        ("D1", standard(1)),
        ("dD1", boundary(1)),
        ("L1[2]", horn(2, 1)),
        ("L0[2]", horn(2, 0)),
        ("D1+D0", coproduct(standard(1), pt).obj),
        ("dD2", boundary(2)),
    ]


def _pick_map(rng: random.Random, X, Y, over=None) -> EZMap | None:
    maps = list(hom_enum(X, Y, over=over)) if over else list(hom_enum(X, Y))
    return rng.choice(maps) if maps else None


def random_chain(rng: random.Random, max_len: int = 2) -> ChainOverB:
    pool = _pool()
    B = F(rng.choice((0, 1)))
    m = rng.randint(0, max_len)
    for _ in range(100):
        top = disc(rng.choice(pool)[1])
        p = _pick_map(rng, top, B)
        if p is None:
            continue
        objects, structure, maps = [top], [p], []
        for _ in range(m):
            src = disc(rng.choice(pool)[1])
            f = _pick_map(rng, src, objects[0])
            if f is None:
                break
            objects.insert(0, src)
            maps.insert(0, f)
            structure.insert(0, structure[0] @ f)
        if len(maps) == m:
            return ChainOverB(B, objects, structure, maps)
    raise RuntimeError("could not draw a chain")


# -- random bisimplicial maps ----------------------------------------------

def bisset_pool() -> list[tuple[str, EZObject]]:
    return [
        ("F0", F(0)),
        ("F1", F(1)),
        ("dF1", dF(1)),
        ("F(L1[2])", disc(horn(2, 1))),
        ("F0+F0", coproduct(F(0), F(0)).obj),
        ("const(D1)", constant(standard(1))),
        ("const(dD1)", constant(boundary(1))),
        ("box(1,1)", box(1, 1)),
    ]


def random_map(rng: random.Random) -> tuple[str, EZMap]:
    pool = bisset_pool()
    while True:
        (a, X), (b, Y) = rng.choice(pool), rng.choice(pool[:6])
        f = _pick_map(rng, X, Y)
        if f is not None:
            return f"{a}->{b}", f


def skeleton_inputs() -> dict[str, EZObject]:
    from .category import disc_nerve

    return {
        "box(1,1)": box(1, 1),
        "box(2,1)": box(2, 1),
        "box(1,2)": box(1, 2),
        "bbox(1,1)": boundary_box(1, 1),
        "F2": F(2),
        "dF2": dF(2),
        "const(dD2)": constant(boundary(2)),
        "nerve(z2)": disc_nerve(cyclic_group(2), 3),
    }


@dataclass
class Corpus:
    seed: int
    categories: dict[str, FinCat]
    chains: list[ChainOverB] = field(default_factory=list)
    maps: list[tuple[str, EZMap]] = field(default_factory=list)
    bissets: dict[str, EZObject] = field(default_factory=dict)


def default_corpus(seed: int = 0, chains: int = 50, maps: int = 100) -> Corpus:
    rng = random.Random(seed)
    return Corpus(
        seed,
        categories(),
        [random_chain(rng) for _ in range(chains)],
        [random_map(rng) for _ in range(maps)],
        skeleton_inputs(),
    )


# -- on-disk corpus ----------------------------------------------------------

def write_corpus(c: Corpus, path: str | Path) -> None:
    from .io import save

    root = Path(path)
    for sub in ("categories", "chains", "maps", "bissets"):
        (root / sub).mkdir(parents=True, exist_ok=True)
    for name, C in c.categories.items():
        save(C, root / "categories" / f"{name}.json")
    for k, ch in enumerate(c.chains):
        save(ch, root / "chains" / f"chain{k:03d}.json")
    for k, (_, f) in enumerate(c.maps):
        save(f, root / "maps" / f"map{k:03d}.json")
    for name, X in c.bissets.items():
        safe = "".join(ch if ch.isalnum() else "_" for ch in name)
        save(X, root / "bissets" / f"{safe}.json")


def read_corpus(path: str | Path, seed: int = 0) -> Corpus:
    """Load a corpus directory; raises ``FormatError`` naming the first bad file."""
    from .io import load

    root = Path(path)
    files = lambda sub: sorted((root / sub).glob("*.json"))
    cats = {p.stem: load(p) for p in files("categories")}
    chains = [load(p) for p in files("chains")]
    maps = [(p.stem, load(p)) for p in files("maps")]
    bissets = {p.stem: load(p) for p in files("bissets")}
    return Corpus(seed, cats, chains, maps, bissets)
