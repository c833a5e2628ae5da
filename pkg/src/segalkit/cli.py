"""``segalkit`` command line: ``check``, ``make`` and ``suite``.

Exit codes: 0 pass, 1 fail, 2 usage or input error, 3 resource cap reached,
4 internal invariant violated.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import io
from .ez import EZMap, EZObject, InvariantViolation, ResourceLimit
from .report import Report

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE, EXIT_INTERNAL = 0, 1, 2, 3, 4

KINDS = (
    "kan-fib", "trivial-fib", "reedy-fib", "left-fib", "segal", "complete", "ho-cat", "heq",
    "yoneda-eval", "yoneda-ff", "cyl-fiber", "prism", "skeleton-pushout", "homology",
    "we-necessary", "pi0",
)
MAKE_KINDS = (
    "standard", "boundary", "horn", "box", "F", "category", "nerve", "elements",
    "cylinder", "product", "pushout", "chain",
)


class UsageError(ValueError):
    pass


# -- helpers ---------------------------------------------------------------

def _cell(c) -> list:
    return [c.gen, [list(e.values) for e in c.epis]]


def _load_all(paths: list[str]) -> list:
    if not paths:
        raise UsageError("this check needs --in")
    return [io.load(p) for p in paths]


def _expect(obj, *types, what: str):
    if not isinstance(obj, types):
        raise UsageError(f"expected {what}, got {type(obj).__name__}")
    return obj


def _as_map(obj) -> EZMap:
    """A map as given, or the terminal map of an object."""
    from .sset import terminal_map

    if isinstance(obj, EZMap):
        return obj
    return terminal_map(_expect(obj, EZObject, what="a map or a (bi)simplicial set"))


def _nerve_input(obj):
    """A discrete bisimplicial set, building a nerve when a category is given."""
    from .bisset import is_discrete
    from .category import FinCat, disc_nerve
    from .segal import NotDiscrete

    if isinstance(obj, FinCat):
        return disc_nerve(obj, 4 if obj.non_identity_cycle() else None)
    X = _expect(obj, EZObject, what="a bisimplicial set or a category")
    if X.axes != 2 or not is_discrete(X):
        raise NotDiscrete("this check needs a discrete bisimplicial set")
    return X


def _family_report(kind, anchor, res) -> Report:
    cert = None
    if not res.holds:
        cert = {"member": list(res.member), "a": [_cell(c) for c in res.square.a],
                "b": [_cell(c) for c in res.square.b]}
    detail = {"complete": res.complete, "members": len(res.verdicts)}
    if res.note:
        detail["note"] = res.note
    return Report(kind, anchor, res.tier, res.holds, cert, detail)


# -- checks ----------------------------------------------------------------

def run_check(kind: str, inputs: list, bound: int, obj_name: str | None = None) -> Report:
    from . import lifting, segal

    if kind in ("kan-fib", "trivial-fib", "reedy-fib", "left-fib"):
        p = _as_map(inputs[0])
        if kind == "kan-fib":
            if p.source.axes != 1:
                raise UsageError("kan-fib needs a map of simplicial sets")
            return _family_report(kind, "D:kanms(a)", lifting.check_kan_fibration(p, bound))
        if kind == "trivial-fib":
            return _family_report(kind, "T:Kan", lifting.check_trivial_fibration(p, bound))
        if p.source.axes != 2:
            raise UsageError(f"{kind} needs a bisimplicial map")
        if kind == "reedy-fib":
            return _family_report(kind, "D:rfib", lifting.check_reedy_fibration(p, bound))
        return _family_report(kind, "E:left(a)+L:leftcart(c)", lifting.check_left_fibration(p, bound))

    if kind == "segal":
        v = segal.check_segal_discrete(_nerve_input(inputs[0]), bound)
        return Report(kind, v.anchor, v.tier, v.holds, None, v.detail)
    if kind == "complete":
        v = segal.is_complete_discrete(_nerve_input(inputs[0]))
        cert = None if v.holds else {"heq": v.detail["heq"], "X0": v.detail["X0"]}
        return Report(kind, v.anchor, v.tier, v.holds, cert, v.detail)
    if kind == "ho-cat":
        try:
            H = segal.homotopy_category(_nerve_input(inputs[0]), bound)
        except segal.SegalFailure as exc:
            return Report(kind, "E:comp", segal.EXACT, False, {"reason": str(exc)})
        C = H.category
        detail = {"objects": list(C.objects), "arrows": [[a.name, a.src, a.tgt] for a in C.arrows],
                  "composition": sorted([g, f, gf] for (g, f), gf in C.composition.items())}
        return Report(kind, "E:comp", segal.EXACT, True, None, detail)
    if kind == "heq":
        X = _nerve_input(inputs[0])
        pc = segal.prime_components(X)
        names = sorted(segal.edge_name(X, e) for e in pc.heq)
        return Report(kind, "L:css(a)", pc.tier, pc.matches, None,
                      {"heq": names, "middle_edges": len(pc.middle), "x3": len(pc.x3)})

    if kind == "yoneda-eval":
        from .category import FinCat, SetFunctor
        from .yoneda import elements, evaluation_check

        Fn = next((o for o in inputs if isinstance(o, SetFunctor)), None)
        if Fn is None:
            raise UsageError("yoneda-eval needs a functor file")
        C = Fn.category
        cats = [o for o in inputs if isinstance(o, FinCat)]
        if cats and cats[0].objects != C.objects:
            raise UsageError("the category file does not match the functor's category")
        if Fn.contravariant:
            raise UsageError("yoneda-eval needs a covariant functor")
        E = elements(C, Fn, 3 if C.non_identity_cycle() else None)
        objs = [obj_name] if obj_name else list(C.objects)
        if obj_name and obj_name not in C.objects:
            raise UsageError(f"unknown object {obj_name!r}")
        rows = {x: evaluation_check(C, x, E, max(bound, 2)) for x in objs}
        bad = [x for x, r in rows.items() if not r.holds]
        detail = {x: {"maps": r.maps, "fiber": r.fiber} for x, r in rows.items()}
        return Report(kind, "P:triv", segal.EXACT, not bad, {"objects": bad} if bad else None, detail)
    if kind == "yoneda-ff":
        from .category import FinCat
        from .yoneda import fully_faithful_yoneda_check

        r = fully_faithful_yoneda_check(_expect(inputs[0], FinCat, what="a category"))
        bad = sorted(f"{a}->{b}" for (a, b), n in r.fibers.items() if r.homs[(a, b)] != n)
        return Report(kind, r.anchor, r.tier, r.holds, {"pairs": bad} if bad else None,
                      {"natural": r.natural, "fibers": {f"{a}->{b}": n for (a, b), n in r.fibers.items()}})

    if kind == "cyl-fiber":
        from .cylinder import ChainOverB, fiber_formula_check

        r = fiber_formula_check(_expect(inputs[0], ChainOverB, what="a chain"), top=bound)
        cert = {"pieces": [list(t.values) for t in r.mismatches]} if not r.holds else None
        return Report(kind, "L:disc", "exact-discrete", r.holds, cert,
                      {"pieces": r.checked, "endpoints": r.endpoints})
    if kind == "prism":
        from .cylinder import prism_decomposition

        sizes = {n: len(prism_decomposition(n).pushout) for n in range(bound + 1)}
        return Report(kind, "L:leftcart", "exact", True, None, {"generators": sizes})
    if kind == "skeleton-pushout":
        from .bisset import skeleton_pushout

        X = _expect(inputs[0], EZObject, what="a bisimplicial set")
        bad = []
        for n in range(1, bound + 1):
            _, comp = skeleton_pushout(X, n)
            if not comp.is_iso():
                bad.append(n)
        return Report(kind, "E:skel2(b)", "exact", not bad, {"degrees": bad} if bad else None,
                      {"degrees": bound})
    if kind == "homology":
        from .homology import homology

        X = _expect(inputs[0], EZObject, what="a simplicial set")
        if X.axes != 1:
            raise UsageError("homology needs a simplicial set")
        top = min(bound, X.dimension()) if bound else X.dimension()
        hs = {f"H{d}": {"betti": h.betti, "torsion": h.torsion} for d in range(top + 1)
              for h in [homology(X, d)]}
        return Report(kind, "plumbing", "exact", True, None, hs)
    if kind == "we-necessary":
        from .homology import WEVerdict, we_necessary

        f = _expect(inputs[0], EZMap, what="a map")
        if f.source.axes != 1:
            raise UsageError("we-necessary needs a map of simplicial sets")
        r = we_necessary(f, bound)
        ok = r.verdict is WEVerdict.CONSISTENT
        return Report(kind, "D:kanms(b)", "exact", ok, None if ok else {"reason": r.reason},
                      {"verdict": r.verdict.value})
    if kind == "pi0":
        from .sset import pi0

        X = _expect(inputs[0], EZObject, what="a (bi)simplicial set")
        comps = [[X.labels[g] for g in c] for c in pi0(X)]
        return Report(kind, "plumbing", "exact", True, None, {"components": comps, "count": len(comps)})
    raise UsageError(f"unknown check {kind!r}")


# -- make ------------------------------------------------------------------

def _ints(params, n, what):
    if len(params) != n:
        raise UsageError(f"{what} takes {n} integer parameter(s)")
    try:
        return [int(p) for p in params]
    except ValueError as exc:
        raise UsageError(f"{what}: {exc}") from exc


def _category(name: str):
    from .corpus import categories

    if name.endswith(".json"):
        return io.load(name)
    cats = categories()
    if name not in cats:
        raise UsageError(f"unknown category {name!r}; known: {', '.join(sorted(cats))}")
    return cats[name]


def run_make(kind: str, params: list[str], bound: int | None, seed: int):
    from . import bisset, sset

    if kind == "standard":
        return sset.standard(*_ints(params, 1, kind))
    if kind == "boundary":
        return sset.boundary(*_ints(params, 1, kind))
    if kind == "horn":
        n, k = _ints(params, 2, kind)
        return sset.horn(n, k)
    if kind == "box":
        return bisset.box(*_ints(params, 2, kind))
    if kind == "F":
        return bisset.F(*_ints(params, 1, kind))
    if kind == "category":
        if len(params) != 1:
            raise UsageError("category takes a name")
        return _category(params[0])
    if kind == "nerve":
        from .category import disc_nerve

        if len(params) != 1:
            raise UsageError("nerve takes a category name or file")
        C = _category(params[0])
        top = bound if bound is not None else (4 if C.non_identity_cycle() else None)
        return disc_nerve(C, top)
    if kind == "elements":
        from .category import SetFunctor
        from .yoneda import elements

        objs = [io.load(p) for p in params]
        Fn = next((o for o in objs if isinstance(o, SetFunctor)), None)
        if Fn is None:
            raise UsageError("elements needs a functor file")
        C = Fn.category
        return elements(C, Fn, bound if bound is not None else (3 if C.non_identity_cycle() else None)).projection
    if kind == "cylinder":
        from .cylinder import ChainOverB, cyl_disc

        if len(params) != 1:
            raise UsageError("cylinder takes a chain file")
        return cyl_disc(_expect(io.load(params[0]), ChainOverB, what="a chain")).projection
    if kind == "product":
        from .ez import product

        objs = [_expect(io.load(p), EZObject, what="an object") for p in params]
        if len(objs) < 2:
            raise UsageError("product takes at least two object files")
        return product(*objs).obj
    if kind == "pushout":
        from .ez import pushout

        if len(params) != 2:
            raise UsageError("pushout takes two map files with a common source")
        f, g = (_expect(io.load(p), EZMap, what="a map") for p in params)
        if io.dumps(io.to_doc(f.source)) != io.dumps(io.to_doc(g.source)):
            raise UsageError("the two maps must share their source")
        g = EZMap(f.source, g.target, g.assignment)
        try:
            return pushout(f, g).obj
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    if kind == "chain":
        import random

        from .corpus import random_chain
        return random_chain(random.Random(seed))
    raise UsageError(f"unknown factory {kind!r}")


# -- argument handling -----------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="segalkit", description="Finite checks for simplicial and bisimplicial sets.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="run one check on object files")
    c.add_argument("kind", choices=KINDS)
    c.add_argument("--in", dest="inputs", nargs="+", default=[], metavar="FILE")
    c.add_argument("--bound", type=int, default=3)
    c.add_argument("--object", default=None, help="object name for yoneda-eval")
    c.add_argument("--out", default=None)
    fmt = c.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--text", action="store_true")
    c.add_argument("--timings", action="store_true")

    m = sub.add_parser("make", help="write an object file from a factory")
    m.add_argument("kind", choices=MAKE_KINDS)
    m.add_argument("params", nargs="*")
    m.add_argument("--bound", type=int, default=None, help="truncation for nerves and elements")
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--out", default=None)

    s = sub.add_parser("suite", help="run the acceptance criteria")
    s.add_argument("--corpus", default=None, metavar="DIR")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", default=None)
    s.add_argument("--only", type=int, nargs="+", default=None, metavar="N")
    s.add_argument("--timings", action="store_true")
    fmt = s.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--text", action="store_true")
    return p


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_check(a) -> int:
    if a.bound < 1:
        raise UsageError("--bound must be at least 1")
    t0 = time.perf_counter()
    rep = run_check(a.kind, _load_all(a.inputs), a.bound, a.object)
    rep.seconds = time.perf_counter() - t0
    _emit(rep.to_text() if a.text else rep.to_json(a.timings), a.out)
    return EXIT_PASS if rep.verdict else EXIT_FAIL


def _cmd_make(a) -> int:
    obj = run_make(a.kind, a.params, a.bound, a.seed)
    _emit(io.dumps(io.to_doc(obj)), a.out)
    return EXIT_PASS


def _cmd_suite(a) -> int:
    from .corpus import default_corpus, read_corpus, write_corpus
    from .suite import canonical, run_suite

    corpus = None
    if a.corpus:
        root = Path(a.corpus)
        if not root.exists() or not any(root.rglob("*.json")):
            write_corpus(default_corpus(a.seed), root)
        corpus = read_corpus(root, a.seed)
    rep = run_suite(a.seed, corpus, a.timings, set(a.only) if a.only else None)
    if a.text:
        lines = [f"[{'PASS' if r['passed'] else 'FAIL'}] {r['id']:2d} {r['name']}" for r in rep["criteria"]]
        _emit("\n".join(lines) + "\n", a.out)
    else:
        _emit(canonical(rep), a.out)
    return EXIT_PASS if rep["passed"] else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    from .segal import NotDiscrete

    try:
        a = build_parser().parse_args(argv)
        return {"check": _cmd_check, "make": _cmd_make, "suite": _cmd_suite}[a.command](a)
    except (UsageError, io.FormatError, NotDiscrete) as exc:
        print(f"segalkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimit as exc:
        print(f"segalkit: resource cap reached: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except InvariantViolation as exc:
        print(f"segalkit: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
