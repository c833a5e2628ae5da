"""Lifting problems, bounded fibration checks and the retract witnesses."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import product as iproduct
from typing import Iterator

from .bisset import box, boundary_box, row_map, row_operator, row_view, sub_box
from .ez import (
    EZMap,
    EZObject,
    InvariantViolation,
    classifying_map,
    hom_enum,
    identity_map,
    pullback,
)
from .ordinal import OrdinalMap, face, identity, shift
from .sset import horn, standard
from .virtual import VirtualObject, map_into


class RouteDisagreement(InvariantViolation):
    """Two equivalent characterizations of a fibration class gave different answers."""


@dataclass
class LiftingProblem:
    i: EZMap
    p: EZMap
    a: EZMap
    b: EZMap

    def __post_init__(self):
        if (self.p @ self.a).assignment != (self.b @ self.i).assignment:
            raise ValueError("the square does not commute")


def lifts(P: LiftingProblem) -> list[EZMap]:
    """Every diagonal ``c: B -> X`` with ``p∘c = b`` and ``c∘i = a``."""
    if not P.i.is_mono():
        out = []
        for c in hom_enum(P.i.target, P.p.source, over=(P.p, P.b)):
            if (c @ P.i).assignment == P.a.assignment:
                out.append(c)
        return out
    fixed = {}
    for g, img in enumerate(P.i.assignment):
        fixed[img.gen] = P.a.assignment[g]
    return list(hom_enum(P.i.target, P.p.source, over=(P.p, P.b), fixed=fixed))


@dataclass
class Square:
    """An unfillable square, recorded by its two assignments."""

    a: tuple
    b: tuple


def _squares(i: EZMap, p: EZMap) -> Iterator[tuple[EZMap, EZMap]]:
    for b in hom_enum(i.target, p.target):
        for a in hom_enum(i.source, p.source, over=(p, b @ i)):
            yield a, b


def first_failure(i: EZMap, p: EZMap) -> Square | None:
    """The canonical-order-first square without a lift, or ``None``.

    When ``i`` includes a subobject of a representable, a lift is a cell
    ``x`` over ``b`` with ``x|_A = a``, so the squares are compared against the
    set of such restrictions instead of searching for diagonals.
    """
    A, B = i.source, i.target
    X, Y = p.source, p.target
    worst = None
    representable = (
        i.is_mono() and B.arrows is not None
        and len(B) == len(_representable(B.max_dims()))
    )
    if representable:
        top = B.max_dims()
        over: dict = {}
        for x in X.levels(top):
            over.setdefault(p.map_cell(x), set()).add(
                tuple(X.apply(i_arr, x) for i_arr in _arrows_of(i))
            )
        for y in Y.levels(top):
            b = classifying_map(B, Y, y)
            fillable = over.get(y, set())
            for a in hom_enum(A, X, over=(p, b @ i)):
                if a.assignment not in fillable:
                    key = (a.assignment, b.assignment)
                    if worst is None or key < worst:
                        worst = key
    else:
        for a, b in _squares(i, p):
            if not lifts(LiftingProblem(i, p, a, b)):
                key = (a.assignment, b.assignment)
                if worst is None or key < worst:
                    worst = key
    return None if worst is None else Square(*worst)


def _representable(dims):
    from .ez import representable
    return representable(dims)


def _arrows_of(i: EZMap):
    # operators of B that pick out the images of A's generators
    B = i.target
    return [B.arrows[c.gen] for c in i.assignment]


def has_rlp(i: EZMap, p: EZMap) -> bool:
    return first_failure(i, p) is None


class Family(str, Enum):
    KAN_HORN = "KanHorn"
    KAN_BOUNDARY = "KanBoundary"
    REEDY = "Reedy"
    REEDY_TRIVIAL = "ReedyTrivial"
    LEFT = "Left"


@dataclass
class FamilyResult:
    """Verdict of a family check, with the first failing member and square."""

    holds: bool
    tier: str
    complete: bool = False
    member: tuple | None = None
    square: Square | None = None
    verdicts: dict = field(default_factory=dict)
    note: str = ""


def _inclusion(sub: EZObject, whole: EZObject) -> EZMap:
    pos = {arr: g for g, arr in enumerate(whole.arrows)}
    return EZMap(sub, whole, [whole.cell(pos[arr]) for arr in sub.arrows])


def family_members(fam: Family, bound: int) -> Iterator[tuple[tuple, EZMap]]:
    """The members of a generating family up to ``bound`` as ``(tag, inclusion)``."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    if fam is Family.KAN_HORN:
        for n in range(1, bound + 1):
            for k in range(n + 1):
                yield ("horn", n, k), _inclusion(horn(n, k), standard(n))
    elif fam is Family.KAN_BOUNDARY:
        for n in range(bound + 1):
            D = standard(n)
            sub = restrict_gens(D, [g for g in D.generators if D.dims[g][0] < n])
            yield ("boundary", n), _inclusion(sub, D)
    elif fam is Family.REEDY:
        for n, m, k in _reedy_indices(bound):
            yield ("reedy", n, m, k), _inclusion(reedy_source(n, m, k), box(n, m))
    elif fam is Family.REEDY_TRIVIAL:
        for n in range(bound + 1):
            for m in range(bound + 1 - n):
                yield ("box-boundary", n, m), _inclusion(boundary_box(n, m), box(n, m))
    elif fam is Family.LEFT:
        yield from family_members(Family.REEDY, bound)
        for n, m in _left_indices(bound):
            yield ("left", n, m), _inclusion(left_source(n, m), box(n, m))


def restrict_gens(X, keep):
    from .ez import restrict
    return restrict(X, keep)[0]


def _reedy_indices(bound):
    for total in range(1, bound + 1):
        for m in range(1, total + 1):
            n = total - m
            for k in range(m + 1):
                yield n, m, k


def _left_indices(bound):
    for total in range(1, bound + 1):
        for n in range(1, total + 1):
            yield n, total - n


def reedy_source(n: int, m: int, k: int) -> EZObject:
    """``(∂F[n] × Δ[m]) ∪ (F[n] × Λ^k[m])`` inside ``□[n,m]``."""
    full = set(range(m + 1))
    return sub_box(n, m, lambda s, r: not s.is_surjective() or (set(r.values) | {k}) != full)


def left_source(n: int, m: int) -> EZObject:
    """``(F[n] × ∂Δ[m]) ∪ (F[0] × Δ[m])`` inside ``□[n,m]``, with ``F[0]`` at vertex 0."""
    return sub_box(n, m, lambda s, r: not r.is_surjective() or set(s.values) == {0})


def has_rlp_family(p: EZMap, fam: Family | str, bound: int) -> FamilyResult:
    fam = Family(fam)
    axes = 1 if fam in (Family.KAN_HORN, Family.KAN_BOUNDARY) else 2
    if p.source.axes != axes:
        raise ValueError(f"the {fam.value} family lifts against {axes}-axis maps only")
    verdicts = {}
    first = None
    for tag, i in family_members(fam, bound):
        sq = first_failure(i, p)
        verdicts[tag] = sq is None
        if sq is not None and first is None:
            first = (tag, sq)
    tier, done = f"bounded({bound})", complete_at(p, bound)
    if first is None:
        return FamilyResult(True, tier, done, verdicts=verdicts)
    return FamilyResult(False, tier, done, first[0], first[1], verdicts)


def complete_at(p: EZMap, bound: int) -> bool:
    return max(p.source.dimension(), p.target.dimension()) <= bound - 1


def check_kan_fibration(p: EZMap, bound: int) -> FamilyResult:
    return has_rlp_family(p, Family.KAN_HORN, bound)


def check_trivial_fibration(p: EZMap, bound: int) -> FamilyResult:
    if p.source.axes == 1:
        return has_rlp_family(p, Family.KAN_BOUNDARY, bound)
    res = has_rlp_family(p, Family.REEDY_TRIVIAL, bound)
    res.note = "bisimplicial trivial fibrations use boundary_box ↪ box (an extension, not a cited statement)"
    return res


# ---------------------------------------------------------------------------
# matching objects

def matching_object(p: EZMap, n: int) -> VirtualObject:
    """``Y_n ×_{Y_∂n} X_∂n`` as a simplicial set, via compatible boundary families.

    A cell at level ``m`` is ``(y, x_0, ..., x_n)`` with ``y ∈ Y_{n,m}``,
    ``x_i ∈ X_{n-1,m}``, ``d_i x_j = d_{j-1} x_i`` for ``i < j`` and ``p(x_i) = d_i y``.
    """
    X, Y = p.source, p.target

    def d(obj, i, x, lvl):
        return obj.apply((face(i, lvl), identity(x.level[1])), x)

    def level(dims):
        (m,) = dims
        ys = Y.levels((n, m))
        if n == 0:
            return [(y,) for y in ys]
        fib: dict = {}
        for x in X.levels((n - 1, m)):
            fib.setdefault(p.map_cell(x), []).append(x)
        out = []
        for y in ys:
            pools = [fib.get(d(Y, i, y, n), []) for i in range(n + 1)]
            for xs in iproduct(*pools):
                if n < 2 or all(
                    d(X, i, xs[j], n - 1) == d(X, j - 1, xs[i], n - 1)
                    for j in range(n + 1) for i in range(j)
                ):
                    out.append((y,) + xs)
        return out

    def act(taus, cell):
        (tau,) = taus
        return tuple(obj.apply((identity(c.level[0]), tau), c)
                     for obj, c in zip((Y,) + (X,) * (len(cell) - 1), cell))

    return VirtualObject(1, level, act, name=f"matching[{n}]")


def matching_map(p: EZMap, n: int, top: int):
    """``X_n -> Y_n ×_{Y_∂n} X_∂n`` with the target materialized up to level ``top``."""
    X = p.source
    V = matching_object(p, n)
    M = V.materialize((top,))
    R = row_view(X, n)
    Rt, inc = restrict_sub(R.obj, top)

    def img(c):
        x = R.from_row(inc.map_cell(c))
        faces = tuple(X.apply((face(i, n), identity(x.level[1])), x) for i in range(n + 1)) if n else ()
        return (p.map_cell(x),) + faces

    return map_into(Rt, M, img), M


def restrict_sub(X: EZObject, top: int):
    from .ez import restrict
    return restrict(X, [g for g in X.generators if X.dims[g][0] <= top])


def _reedy_matching_verdicts(p: EZMap, bound: int) -> dict:
    out = {}
    for n in range(bound):
        top = bound - n
        q, _ = matching_map(p, n, top)
        for m in range(1, top + 1):
            for k in range(m + 1):
                out[("reedy", n, m, k)] = first_failure(_inclusion(horn(m, k), standard(m)), q) is None
    return out


def _compare(routes: dict, other: dict, what: str):
    for tag, v in other.items():
        if routes.get(tag) != v:
            raise RouteDisagreement(f"{what}: routes disagree at {tag}")


def check_reedy_fibration(p: EZMap, bound: int) -> FamilyResult:
    """Reedy fibration check by the generating family, cross-checked on matching maps."""
    res = has_rlp_family(p, Family.REEDY, bound)
    _compare(res.verdicts, _reedy_matching_verdicts(p, bound), "reedy")
    return res


def delta0_map(p: EZMap, n: int, top: int):
    """``p_n : X_n -> X_0 ×_{Y_0} Y_n`` induced by ``δ^0``, truncated at level ``top``."""
    X, Y = p.source, p.target
    e0 = shift(0, 0, n)
    PB = pullback(row_map(p, 0), row_operator(Y, e0))
    Rx, Ry = row_view(X, n), row_view(Y, n)
    src, inc = restrict_sub(Rx.obj, top)
    to_x0 = row_operator(X, e0)
    assign = []
    for g in src.generators:
        c = inc.map_cell(src.cell(g))
        x = Rx.from_row(c)
        assign.append(PB.tuple_cell([to_x0.map_cell(c), Ry.to_row(p.map_cell(x))]))
    return EZMap(src, PB.obj, assign)


def check_left_fibration(p: EZMap, bound: int) -> FamilyResult:
    """Left fibration check by both routes; they must agree member by member."""
    res = has_rlp_family(p, Family.LEFT, bound)
    other = _reedy_matching_verdicts(p, bound)
    for n, m in _left_indices(bound):
        q = delta0_map(p, n, m)
        i = _boundary_inclusion(m)
        other[("left", n, m)] = first_failure(i, q) is None
    _compare(res.verdicts, other, "left")
    return res


def _boundary_inclusion(m: int) -> EZMap:
    D = standard(m)
    return _inclusion(restrict_gens(D, [g for g in D.generators if D.dims[g][0] < m]), D)


# ---------------------------------------------------------------------------
# retracts

@dataclass
class RetractDelta0:
    n: int
    alpha: tuple[OrdinalMap, OrdinalMap]
    beta: dict

    def beta_alpha_identity(self) -> bool:
        return all(self.beta[(self.alpha[0](i), self.alpha[1](i))] == i for i in range(self.n + 2))

    def image_conditions(self) -> bool:
        return self.alpha[1](0) == 0 and all(self.beta[(i, 0)] == 0 for i in range(self.n + 1))


def retract_delta0(n: int) -> RetractDelta0:
    """``[n+1] -α-> [n]×[1] -β-> [n+1]`` with ``β∘α = Id``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    first = [0] + [i - 1 for i in range(1, n + 2)]
    second = [0] + [1] * (n + 1)
    alpha = (OrdinalMap(tuple(first), n), OrdinalMap(tuple(second), 1))
    beta = {(i, j): (i + 1) * j for i in range(n + 1) for j in range(2)}
    return RetractDelta0(n, alpha, beta)


@dataclass
class RetractWitness:
    """Squares ``f -> g -> f`` whose composite is the identity of ``f``."""

    s_top: EZMap
    s_bot: EZMap
    r_top: EZMap
    r_bot: EZMap


def is_retract(f: EZMap, g: EZMap) -> RetractWitness | None:
    """First pair of squares ``f -> g -> f`` composing to ``id_f``, in canonical order."""
    A, B = f.source, f.target
    C, D = g.source, g.target
    idA, idB = identity_map(A).assignment, identity_map(B).assignment
    for s_bot in hom_enum(B, D):
        for s_top in hom_enum(A, C, over=(g, s_bot @ f)):
            for r_bot in hom_enum(D, B, prune=_composite_guard(s_bot, idB)):
                for r_top in hom_enum(C, A, over=(f, r_bot @ g), prune=_composite_guard(s_top, idA)):
                    w = RetractWitness(s_top, s_bot, r_top, r_bot)
                    if retract_check(f, g, w):
                        return w
    return None


def _composite_guard(s: EZMap, ident):
    # r ∘ s = id, checked as soon as r is fixed on the image generator of s
    src_of = {}
    for g, c in enumerate(s.assignment):
        if c.is_generator():
            src_of.setdefault(c.gen, []).append(g)

    def ok(h, cell, partial):
        for g in src_of.get(h, ()):
            if cell != ident[g]:
                return False
        return True

    return ok


def retract_check(f: EZMap, g: EZMap, w: RetractWitness) -> bool:
    return (
        (w.r_top @ w.s_top).assignment == identity_map(f.source).assignment
        and (w.r_bot @ w.s_bot).assignment == identity_map(f.target).assignment
        and (g @ w.s_top).assignment == (w.s_bot @ f).assignment
        and (f @ w.r_top).assignment == (w.r_bot @ g).assignment
    )
