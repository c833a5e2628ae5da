"""JSON object files: canonical save and validated load.

Every document has a top-level ``kind`` among ``sset``, ``bisset``, ``fincat``,
``functor``, ``chain`` and ``map``.  Cells are written as explicit surjection
value-arrays together with a generator id.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .category import Arrow, CategoryError, FinCat, SetFunctor
from .ez import EZMap, EZObject, NormalSimplex, make
from .ordinal import OrdinalMap

KINDS = ("sset", "bisset", "fincat", "functor", "chain", "map")


class FormatError(ValueError):
    """A document that does not describe a valid object."""


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


# -- cells -----------------------------------------------------------------

def _surj(tau: OrdinalMap) -> list[int]:
    return list(tau.values)


def _cell_doc(X: EZObject, c: NormalSimplex) -> dict:
    s = [_surj(e) for e in c.epis]
    return {"generator": c.gen, "surjection": s[0] if X.axes == 1 else s}


def _parse_surj(values, what: str) -> OrdinalMap:
    if not isinstance(values, list) or not values or not all(isinstance(v, int) for v in values):
        raise FormatError(f"{what}: surjection must be a non-empty list of integers")
    if values[0] != 0 or any(b - a not in (0, 1) for a, b in zip(values, values[1:])):
        raise FormatError(f"{what}: {values} is not a monotone surjection")
    return OrdinalMap(tuple(values), values[-1])


def _parse_cell(axes: int, doc, ids: dict, what: str) -> NormalSimplex:
    if not isinstance(doc, dict) or "generator" not in doc or "surjection" not in doc:
        raise FormatError(f"{what}: a cell needs 'generator' and 'surjection'")
    if doc["generator"] not in ids:
        raise FormatError(f"{what}: unknown generator {doc['generator']!r}")
    raw = [doc["surjection"]] if axes == 1 else doc["surjection"]
    if not isinstance(raw, list) or len(raw) != axes:
        raise FormatError(f"{what}: expected {axes} surjection arrays")
    return NormalSimplex(tuple(_parse_surj(v, what) for v in raw), ids[doc["generator"]])


# -- simplicial objects ----------------------------------------------------

def object_doc(X: EZObject) -> dict:
    order = sorted(X.generators, key=lambda g: (X.dims[g], g))
    groups: dict[tuple, list[int]] = {}
    for g in order:
        groups.setdefault(X.dims[g], []).append(g)
    faces = []
    for g in order:
        for axis, fa in enumerate(X.faces[g]):
            for i, c in enumerate(fa):
                d = _cell_doc(X, c)
                faces.append({"of": g, "axis": axis, "index": i, **d})
    doc = {
        "kind": "sset" if X.axes == 1 else "bisset",
        "generators": [{"degree": list(k), "ids": v} for k, v in groups.items()],
        "faces": faces,
    }
    if any(X.labels[g] != str(g) for g in X.generators):
        doc["labels"] = {str(g): X.labels[g] for g in order}
    if X.arrows is not None:
        doc["arrows"] = [[_surj_or_values(t) for t in X.arrows[g]] for g in X.generators]
    return doc


def _surj_or_values(t: OrdinalMap) -> dict:
    return {"values": list(t.values), "cod": t.cod}


def load_object(doc: dict) -> EZObject:
    kind = doc.get("kind")
    if kind not in ("sset", "bisset"):
        raise FormatError(f"expected an sset or bisset, got {kind!r}")
    axes = 1 if kind == "sset" else 2
    raw = []
    for grp in _need(doc, "generators", list):
        deg = grp.get("degree") if isinstance(grp, dict) else None
        if not isinstance(deg, list) or len(deg) != axes or any(not isinstance(v, int) or v < 0 for v in deg):
            raise FormatError(f"bad degree {deg!r}")
        for i in _need(grp, "ids", list):
            raw.append((tuple(deg), i))
    seen = [i for _, i in raw]
    if len(set(map(repr, seen))) != len(seen):
        raise FormatError("duplicate generator id")
    if all(isinstance(i, int) for i in seen) and set(seen) == set(range(len(seen))):
        ids = {i: i for i in seen}
    else:
        ids = {i: k for k, (_, i) in enumerate(sorted(raw, key=lambda p: (p[0], repr(p[1]))))}
    dims: list = [None] * len(ids)
    for deg, i in raw:
        dims[ids[i]] = deg
    slots = [[[None] * (d[a] + 1 if d[a] else 0) for a in range(axes)] for d in dims]
    for f in _need(doc, "faces", list):
        if not isinstance(f, dict) or f.get("of") not in ids:
            raise FormatError(f"face entry {f!r} names no known generator")
        g, axis, idx = ids[f["of"]], f.get("axis"), f.get("index")
        if axis not in range(axes) or not isinstance(idx, int) or not 0 <= idx < len(slots[g][axis]):
            raise FormatError(f"face of {f['of']!r}: bad axis/index")
        c = _parse_cell(axes, f, ids, f"face {idx} of {f['of']!r}")
        want = list(dims[g])
        want[axis] -= 1
        if c.level != tuple(want):
            raise FormatError(f"face {idx} of {f['of']!r} has level {c.level}, expected {tuple(want)}")
        slots[g][axis][idx] = c
    for g, s in enumerate(slots):
        if any(c is None for fa in s for c in fa):
            raise FormatError(f"generator {g} is missing faces")
    labels = None
    if "labels" in doc:
        lab = doc["labels"]
        labels = [str(lab.get(str(i), i)) for _, i in sorted(raw, key=lambda p: ids[p[1]])]
    arrows = None
    if "arrows" in doc:
        arrows = [tuple(OrdinalMap(tuple(t["values"]), t["cod"]) for t in a) for a in doc["arrows"]]
    X = make(axes, dims, slots, labels, arrows)
    try:
        X.validate()
    except Exception as exc:  # simplicial identities
        raise FormatError(f"object fails validation: {exc}") from exc
    return X


def _need(doc, key, typ):
    v = doc.get(key) if isinstance(doc, dict) else None
    if not isinstance(v, typ):
        raise FormatError(f"missing or malformed {key!r}")
    return v


# -- maps ------------------------------------------------------------------

def map_doc(f: EZMap) -> dict:
    return {
        "kind": "map",
        "source": object_doc(f.source),
        "target": object_doc(f.target),
        "assignment": [{"of": g, **_cell_doc(f.target, f.assignment[g])} for g in f.source.generators],
    }


def _assignment(src: EZObject, tgt: EZObject, rows) -> list[NormalSimplex]:
    if not isinstance(rows, list) or len(rows) != len(src):
        raise FormatError("assignment must give one cell per source generator")
    ids = {g: g for g in tgt.generators}
    out: list = [None] * len(src)
    for r in rows:
        g = r.get("of") if isinstance(r, dict) else None
        if g not in range(len(src)) or out[g] is not None:
            raise FormatError(f"bad assignment entry {r!r}")
        out[g] = _parse_cell(tgt.axes, r, ids, f"image of {g}")
    return out


def load_map(doc: dict, source: EZObject | None = None, target: EZObject | None = None) -> EZMap:
    if doc.get("kind") != "map":
        raise FormatError(f"expected a map, got {doc.get('kind')!r}")
    X = source or load_object(_need(doc, "source", dict))
    Y = target or load_object(_need(doc, "target", dict))
    f = EZMap(X, Y, _assignment(X, Y, doc.get("assignment")))
    try:
        f.validate()
    except Exception as exc:
        raise FormatError(f"map is not simplicial: {exc}") from exc
    return f


# -- categories and functors -----------------------------------------------

def fincat_doc(C: FinCat) -> dict:
    return {
        "kind": "fincat",
        "name": C.name,
        "objects": list(C.objects),
        "arrows": [{"name": a.name, "src": a.src, "tgt": a.tgt} for a in C.arrows],
        "identities": dict(C.identities),
        "composition": sorted([g, f, gf] for (g, f), gf in C.composition.items()),
    }


def load_fincat(doc: dict) -> FinCat:
    if doc.get("kind") != "fincat":
        raise FormatError(f"expected a fincat, got {doc.get('kind')!r}")
    try:
        arrows = [Arrow(a["name"], a["src"], a["tgt"]) for a in _need(doc, "arrows", list)]
        comp = {(g, f): gf for g, f, gf in _need(doc, "composition", list)}
        return FinCat(_need(doc, "objects", list), arrows, _need(doc, "identities", dict),
                      comp, doc.get("name", ""))
    except (CategoryError, KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"invalid category: {exc}") from exc


def functor_doc(Fn: SetFunctor) -> dict:
    return {
        "kind": "functor",
        "category": fincat_doc(Fn.category),
        "contravariant": Fn.contravariant,
        "sets": {x: list(v) for x, v in Fn.sets.items()},
        "maps": {a: sorted([[e, v] for e, v in m.items()], key=repr) for a, m in Fn.maps.items()},
    }


def load_functor(doc: dict) -> SetFunctor:
    if doc.get("kind") != "functor":
        raise FormatError(f"expected a functor, got {doc.get('kind')!r}")
    C = load_fincat(_need(doc, "category", dict))
    try:
        sets = {x: list(v) for x, v in _need(doc, "sets", dict).items()}
        maps = {a: {e: v for e, v in m} for a, m in _need(doc, "maps", dict).items()}
        Fn = SetFunctor(C, sets, maps, bool(doc.get("contravariant", False)))
        Fn.validate()
    except (CategoryError, KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"invalid functor: {exc}") from exc
    return Fn


# -- chains over a base ----------------------------------------------------

def chain_doc(ch) -> dict:
    return {
        "kind": "chain",
        "base": object_doc(ch.base),
        "objects": [object_doc(K) for K in ch.objects],
        "structure": [map_doc(p)["assignment"] for p in ch.structure],
        "maps": [map_doc(f)["assignment"] for f in ch.maps],
    }


def load_chain(doc: dict):
    from .cylinder import ChainOverB

    if doc.get("kind") != "chain":
        raise FormatError(f"expected a chain, got {doc.get('kind')!r}")
    B = load_object(_need(doc, "base", dict))
    Ks = [load_object(o) for o in _need(doc, "objects", list)]
    st = _need(doc, "structure", list)
    mp = _need(doc, "maps", list)
    if len(st) != len(Ks) or len(mp) != len(Ks) - 1:
        raise FormatError("a chain of length m needs m+1 objects, m+1 structure maps and m maps")
    structure = [EZMap(K, B, _assignment(K, B, r)) for K, r in zip(Ks, st)]
    maps = [EZMap(Ks[j], Ks[j + 1], _assignment(Ks[j], Ks[j + 1], r)) for j, r in enumerate(mp)]
    try:
        for f in structure + maps:
            f.validate()
        return ChainOverB(B, Ks, structure, maps)
    except Exception as exc:
        raise FormatError(f"invalid chain: {exc}") from exc


# -- dispatch --------------------------------------------------------------

def to_doc(obj: Any) -> dict:
    from .cylinder import ChainOverB

    if isinstance(obj, EZObject):
        return object_doc(obj)
    if isinstance(obj, EZMap):
        return map_doc(obj)
    if isinstance(obj, FinCat):
        return fincat_doc(obj)
    if isinstance(obj, SetFunctor):
        return functor_doc(obj)
    if isinstance(obj, ChainOverB):
        return chain_doc(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def from_doc(doc: Any):
    if not isinstance(doc, dict) or doc.get("kind") not in KINDS:
        raise FormatError("document has no recognised 'kind'")
    return {
        "sset": load_object, "bisset": load_object, "fincat": load_fincat,
        "functor": load_functor, "chain": load_chain, "map": load_map,
    }[doc["kind"]](doc)


def save(obj: Any, path: str | Path) -> None:
    Path(path).write_text(dumps(to_doc(obj)), encoding="utf-8")


def load(path: str | Path):
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise FormatError(f"{path}: {exc}") from exc
    try:
        return from_doc(doc)
    except FormatError as exc:
        raise FormatError(f"{path}: {exc}") from exc


def canonicalize(text: str) -> str:
    return dumps(to_doc(from_doc(json.loads(text))))

