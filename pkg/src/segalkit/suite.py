"""The twelve acceptance criteria as runnable checks.

``run_suite`` returns a JSON-ready dict.  Wall-clock times only appear when
asked for, so two runs with the same seed serialize to the same bytes.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass
from math import comb
from typing import Callable

from .bisset import F, skeleton_pushout
from .category import disc_nerve, isomorphism
from .corpus import Corpus, default_corpus, functors, is_groupoid, is_poset
from .cylinder import fiber_formula_check, prism_decomposition
from .ez import find_isomorphism, hom_enum, product, pushout, restrict
from .homology import WEVerdict, homology, we_necessary
from .lifting import RouteDisagreement, _inclusion, check_left_fibration, retract_delta0
from .ordinal import (
    compose,
    degeneracy,
    enumerate_maps,
    face,
    identity,
    opposite,
    twist,
)
from .segal import check_segal_discrete, homotopy_category, is_complete_discrete, prime_components
from .sset import boundary, standard
from .yoneda import elements, twist_left_check, evaluation_check, fully_faithful_yoneda_check


@dataclass
class Criterion:
    number: int
    name: str
    anchor: str
    tier: str
    limit: float
    run: Callable[[Corpus], tuple[bool, dict]]


# -- 1 ---------------------------------------------------------------------

def _ordinal(_: Corpus) -> tuple[bool, dict]:
    N = 4
    bad = []
    for n in range(N + 1):
        # the cosimplicial identities, all composites landing in [n]
        for j in range(n + 1):
            for i in range(j):
                if n >= 2 and compose(face(j, n), face(i, n - 1)) != compose(face(i, n), face(j - 1, n - 1)):
                    bad.append(("dd", i, j, n))
        for j in range(n + 1):
            for i in range(j + 1):
                if compose(degeneracy(j, n), degeneracy(i, n + 1)) != compose(degeneracy(i, n), degeneracy(j + 1, n + 1)):
                    bad.append(("ss", i, j, n))
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = compose(degeneracy(j, n), face(i, n + 1))
                if i < j:
                    rhs = compose(face(i, n), degeneracy(j - 1, n - 1))
                elif i in (j, j + 1):
                    rhs = identity(n)
                else:
                    rhs = compose(face(i - 1, n), degeneracy(j, n - 1))
                if lhs != rhs:
                    bad.append(("sd", i, j, n))
    pairs = 0
    maps = {(a, b): enumerate_maps(a, b) for a in range(N + 1) for b in range(N + 1)}
    for a in range(N + 1):
        if opposite(identity(a)) != identity(a) or twist(identity(a)) != identity(2 * a + 1):
            bad.append(("id", a))
        for b in range(N + 1):
            for f in maps[(a, b)]:
                if opposite(opposite(f)) != f:
                    bad.append(("involution", f.values))
                if twist(f).dom != 2 * a + 1 or twist(f).cod != 2 * b + 1:
                    bad.append(("twist-size", f.values))
            for c in range(N + 1):
                for f in maps[(a, b)]:
                    for g in maps[(b, c)]:
                        gf = compose(g, f)
                        pairs += 1
                        if opposite(gf) != compose(opposite(g), opposite(f)):
                            bad.append(("op", f.values, g.values))
                        if twist(gf) != compose(twist(g), twist(f)):
                            bad.append(("tw", f.values, g.values))
    return not bad, {"composable_pairs": pairs, "failures": bad[:5]}


# -- 2 ---------------------------------------------------------------------

def _counting(_: Corpus) -> tuple[bool, dict]:
    table, ok = {}, True
    for n in range(4):
        for m in range(4):
            count = sum(1 for _ in hom_enum(standard(n), standard(m)))
            simplices = len(standard(m).levels((n,)))
            table[f"{n},{m}"] = count
            ok &= count == comb(n + m + 1, n + 1) == simplices
    return ok, {"counts": table}


# -- 3 ---------------------------------------------------------------------

def _prisms(_: Corpus) -> tuple[bool, dict]:
    P = product(F(1), F(1))
    d = _f_face(1, 2)
    square = find_isomorphism(pushout(d, d).obj, P.obj) is not None
    sizes = {}
    for n in range(4):
        pr = prism_decomposition(n)
        sizes[n] = len(pr.pushout)
        if not (pr.comparison.is_iso() and pr.counts_match and pr.searched is not None):
            return False, {"n": n}
    return square, {"square": square, "generators": sizes}


def _f_face(i: int, n: int):
    from .cylinder import f_map
    return f_map(face(i, n))


# -- 4 ---------------------------------------------------------------------

def _retract(_: Corpus) -> tuple[bool, dict]:
    res = {n: (r.beta_alpha_identity(), r.image_conditions()) for n in range(6) for r in [retract_delta0(n)]}
    return all(a and b for a, b in res.values()), {"checked": sorted(res)}


# -- 5 ---------------------------------------------------------------------

def _cylinders(c: Corpus) -> tuple[bool, dict]:
    checked = mismatches = 0
    bad = []
    for k, ch in enumerate(c.chains):
        r = fiber_formula_check(ch, top=3)
        checked += r.checked
        if not r.holds:
            mismatches += len(r.mismatches) or 1
            bad.append(k)
    ok = len(c.chains) >= 50 and not bad
    return ok, {"chains": len(c.chains), "pieces": checked, "mismatches": mismatches, "failing": bad}


# -- 6 ---------------------------------------------------------------------

def _left(c: Corpus) -> tuple[bool, dict]:
    agree = fib = 0
    errors = []
    for name, f in c.maps:
        try:
            fib += check_left_fibration(f, 3).holds
            agree += 1
        except RouteDisagreement as exc:
            errors.append(f"{name}: {exc}")
    twist = {}
    for name, C in c.categories.items():
        if is_poset(C) or is_groupoid(C):
            twist[name] = twist_left_check(C, 3).holds
    ok = len(c.maps) >= 100 and not errors and all(twist.values())
    return ok, {"maps": len(c.maps), "agree": agree, "left_fibrations": fib,
                "disagreements": errors, "twist": twist}


# -- 7 ---------------------------------------------------------------------

def _nerve(C):
    return disc_nerve(C, 4 if C.non_identity_cycle() else None)


def _segal(c: Corpus) -> tuple[bool, dict]:
    out = {}
    for name, C in c.categories.items():
        X = _nerve(C)
        seg = check_segal_discrete(X, 4).holds
        Ho = homotopy_category(X)  # builds and validates the full composition table
        out[name] = seg and isomorphism(Ho.category, C) is not None
    return all(out.values()), {"categories": out}


# -- 8 ---------------------------------------------------------------------

def _complete(c: Corpus) -> tuple[bool, dict]:
    rows, ok = {}, True
    for name, C in c.categories.items():
        X = _nerve(C)
        v = is_complete_discrete(X)
        pc = prime_components(X)
        rows[name] = {"complete": v.holds, "heq_matches": pc.matches}
        ok &= pc.matches
        if is_poset(C):
            ok &= v.holds
        if is_groupoid(C) and len(C.arrows) > len(C.objects):
            ok &= not v.holds
    return ok, {"categories": rows}


# -- 9 ---------------------------------------------------------------------

def _yoneda(c: Corpus) -> tuple[bool, dict]:
    ev, ff = {}, {}
    for name, C in c.categories.items():
        top = 3 if C.non_identity_cycle() else None
        for fname, Fn in functors(C):
            E = elements(C, Fn, top)
            for x in C.objects:
                ev[f"{name}/{fname}/{x}"] = evaluation_check(C, x, E).holds
        ff[name] = fully_faithful_yoneda_check(C).holds
    return all(ev.values()) and all(ff.values()), {
        "evaluations": len(ev), "evaluation_failures": sorted(k for k, v in ev.items() if not v),
        "fully_faithful": ff}


# -- 10 --------------------------------------------------------------------

def _skeleta(c: Corpus) -> tuple[bool, dict]:
    rows = {}
    for name, X in c.bissets.items():
        res = []
        for n in range(1, 4):
            P, comp = skeleton_pushout(X, n)
            sk, _ = restrict(X, [g for g in X.generators if sum(X.dims[g]) <= n])
            comp.validate()
            res.append(comp.is_iso() and len(comp.target) == len(sk))
        rows[name] = all(res)
    return all(rows.values()), {"objects": rows}


# -- 11 --------------------------------------------------------------------

def _homology(_: Corpus) -> tuple[bool, dict]:
    spheres = {}
    ok = True
    for n in (2, 3):
        hs = [homology(boundary(n), d).as_tuple() for d in range(n + 1)]
        want = [(1, ()) if d in (0, n - 1) else (0, ()) for d in range(n + 1)]
        spheres[n] = hs
        ok &= hs == want
    r = we_necessary(_inclusion(boundary(2), standard(2)), 2)
    ok &= r.verdict is WEVerdict.REFUTED
    return ok, {"spheres": spheres, "collapse": r.verdict.value, "reason": r.reason}


CRITERIA = [
    Criterion(1, "ordinal-algebra", "E:opp+E:catmor", "exact", 5, _ordinal),
    Criterion(2, "hom-counting", "E:stsym(b)", "exact", 10, _counting),
    Criterion(3, "prism-decomposition", "L:undcat+L:leftcart", "exact", 30, _prisms),
    Criterion(4, "retract-witness", "L:leftcart", "exact", 1, _retract),
    Criterion(5, "cylinder-fiber-formula", "L:disc", "exact-discrete", 60, _cylinders),
    Criterion(6, "left-dual-route", "E:left(a)+L:leftcart(c)+L:morp", "bounded(3)", 120, _left),
    Criterion(7, "segal-ho-roundtrip", "E:Segal(b)+E:comp", "exact-discrete", 30, _segal),
    Criterion(8, "completeness", "L:css(a)+L:css(b)", "exact-discrete", 30, _complete),
    Criterion(9, "discrete-yoneda", "P:triv+T:yoneda(b)", "exact-discrete", 60, _yoneda),
    Criterion(10, "skeleton-pushout", "E:skel2(b)", "exact", 30, _skeleta),
    Criterion(11, "homology-sanity", "D:kanms(b)", "exact", 10, _homology),
]


def run_criterion(cr: Criterion, corpus: Corpus) -> tuple[dict, float]:
    t0 = time.perf_counter()
    try:
        ok, detail = cr.run(corpus)
        error = None
    except Exception as exc:  # a crash is a failed criterion, with its reason on record
        ok, detail, error = False, {}, f"{type(exc).__name__}: {exc}"
    dt = time.perf_counter() - t0
    row = {
        "id": cr.number, "name": cr.name, "anchor": cr.anchor, "tier": cr.tier,
        "limit_s": cr.limit, "passed": bool(ok) and dt < cr.limit,
        "detail": detail,
    }
    if error:
        row["error"] = error
    return row, dt


def _core(corpus: Corpus, only=None) -> tuple[list[dict], dict]:
    rows, times = [], {}
    for cr in CRITERIA:
        if only and cr.number not in only:
            continue
        row, dt = run_criterion(cr, corpus)
        rows.append(row)
        times[cr.number] = dt
    return rows, times


def canonical(report: dict) -> str:
    from .report import jsonable
    return json.dumps(jsonable(report), sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def run_suite(seed: int = 0, corpus: Corpus | None = None, timings: bool = False,
              only: set[int] | None = None) -> dict:
    """Run the criteria; the twelfth reruns the others and compares serialized output."""
    generated = corpus is None
    corpus = corpus or default_corpus(seed)
    # asking for 12 alone still compares two runs of the other eleven
    core = None if only == {12} else only
    rows, times = _core(corpus, core)
    report = {"seed": corpus.seed, "criteria": rows}
    if not only or 12 in only:
        t0 = time.perf_counter()
        first = canonical({"seed": corpus.seed, "criteria": rows})
        again, _ = _core(default_corpus(corpus.seed) if generated else corpus, core)
        second = canonical({"seed": corpus.seed, "criteria": again})
        if only == {12}:
            rows.clear()
        same = first == second
        times[12] = time.perf_counter() - t0
        rows.append({"id": 12, "name": "determinism", "anchor": "plumbing", "tier": "exact",
                     "limit_s": None, "passed": same,
                     "detail": {"bytes": len(first), "identical": same}})
    report["passed"] = all(r["passed"] for r in rows)
    if timings:
        for r in rows:
            r["seconds"] = round(times[r["id"]], 3)
    return report
