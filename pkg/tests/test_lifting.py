import pytest

import oracles
from segalkit.bisset import F, box, disc_map
from segalkit.category import CatFunctor, cyclic_group, discrete_cat, nerve, nerve_map, ordinal_cat, poset
from segalkit.ez import classifying_map, hom_enum, identity_map, product
from segalkit.lifting import (
    Family,
    LiftingProblem,
    RetractWitness,
    check_kan_fibration,
    check_left_fibration,
    check_reedy_fibration,
    check_trivial_fibration,
    family_members,
    has_rlp_family,
    is_retract,
    lifts,
    retract_check,
    retract_delta0,
)
from segalkit.ordinal import OrdinalMap, compose
from segalkit.sset import boundary, horn, levels, standard, terminal_map, vertex_map
from segalkit.yoneda import twist_left_check

SHAPES = [
    ("Δ0", standard(0), oracles.standard_facets(0)),
    ("Δ1", standard(1), oracles.standard_facets(1)),
    ("Δ2", standard(2), oracles.standard_facets(2)),
    ("∂Δ1", boundary(1), oracles.boundary_facets(1)),
    ("∂Δ2", boundary(2), oracles.boundary_facets(2)),
    ("Λ0[2]", horn(2, 0), oracles.horn_facets(2, 0)),
    ("Λ1[2]", horn(2, 1), oracles.horn_facets(2, 1)),
]


@pytest.mark.parametrize("name,X,facets", SHAPES, ids=[s[0] for s in SHAPES])
def test_kan_and_trivial_against_oracle(name, X, facets):
    p = terminal_map(X)
    assert check_kan_fibration(p, 3).holds == oracles.kan_to_point(facets, 3)
    assert check_trivial_fibration(p, 3).holds == oracles.trivial_to_point(facets, 3)


def test_standard_simplex_is_not_trivially_fibrant():
    assert check_trivial_fibration(terminal_map(standard(0)), 2).holds
    for n in (1, 2):
        r = check_trivial_fibration(terminal_map(standard(n)), n + 1)
        assert not r.holds
        assert r.member == ("boundary", 1)


def test_interval_kan_witness():
    r = check_kan_fibration(terminal_map(standard(1)), 2)
    assert not r.holds and r.member == ("horn", 2, 0) and r.square is not None
    assert r.tier == "bounded(2)"


def test_inner_horn_fillers_are_unique():
    D2, D1 = standard(2), standard(1)
    i = next(m for tag, m in family_members(Family.KAN_HORN, 2) if tag == ("horn", 2, 1))
    p, b = terminal_map(D1), terminal_map(D2)
    count = 0
    for a in hom_enum(horn(2, 1), D1):
        a = type(a)(i.source, D1, a.assignment)
        assert len(lifts(LiftingProblem(i, p, a, b))) == 1
        count += 1
    assert count == 4


def test_noncommuting_square_rejected():
    i = vertex_map(standard(1), 0)
    b = identity_map(standard(1))
    a = vertex_map(standard(1), 1)
    with pytest.raises(ValueError):
        LiftingProblem(i, identity_map(standard(1)), a, b)


def test_group_nerve_is_kan():
    N = nerve(cyclic_group(2), 4)
    assert check_kan_fibration(terminal_map(N), 3).holds


def test_family_axes_guard():
    with pytest.raises(ValueError):
        has_rlp_family(terminal_map(F(1)), Family.KAN_HORN, 2)
    with pytest.raises(ValueError):
        has_rlp_family(terminal_map(standard(1)), "Reedy", 2)
    with pytest.raises(ValueError):
        list(family_members(Family.REEDY, 0))


def test_reedy_examples():
    assert not check_reedy_fibration(terminal_map(box(1, 1)), 2).holds
    assert check_reedy_fibration(terminal_map(F(1)), 3).holds
    assert check_reedy_fibration(terminal_map(F(2)), 2).holds


def test_left_examples():
    r = check_left_fibration(terminal_map(F(1)), 2)
    assert not r.holds
    assert check_left_fibration(identity_map(F(2)), 2).holds
    assert twist_left_check(ordinal_cat(1), 2).holds
    assert twist_left_check(poset(["a", "b", "c"], {("a", "b"), ("a", "c")}), 2).holds


def _poset_functor(C, D, objmap):
    arrow_of = {(a.src, a.tgt): a.name for a in D.arrows}
    return CatFunctor(C, D, dict(objmap), {a.name: arrow_of[(objmap[a.src], objmap[a.tgt])] for a in C.arrows})


def _functors():
    I0, I1, I2 = ordinal_cat(0), ordinal_cat(1), ordinal_cat(2)
    D2 = discrete_cat(2)
    Z2 = cyclic_group(2)
    yield "[1]->[0]", _poset_functor(I1, I0, {"0": "0", "1": "0"})
    yield "[0]->[1] at 0", _poset_functor(I0, I1, {"0": "0"})
    yield "[0]->[1] at 1", _poset_functor(I0, I1, {"0": "1"})
    yield "id[2]", _poset_functor(I2, I2, {x: x for x in I2.objects})
    yield "[1]->[2] skip", _poset_functor(I1, I2, {"0": "0", "1": "2"})
    yield "D2->[0]", _poset_functor(D2, I0, {x: "0" for x in D2.objects})
    yield "Z2->pt", CatFunctor(Z2, I0, {"*": "0"}, {a.name: "id0" for a in Z2.arrows})


@pytest.mark.parametrize("name,G", list(_functors()), ids=[n for n, _ in _functors()])
def test_nerve_left_fibration_matches_discrete_opfibration(name, G):
    G.validate()
    top = 4 if G.source.non_identity_cycle() else None
    f = disc_map(nerve_map(G, top=top, target_top=None))
    assert check_left_fibration(f, 3).holds == oracles.is_discrete_opfibration(G)


def test_retract_delta0_closed_form():
    for n in range(6):
        r = retract_delta0(n)
        assert r.beta_alpha_identity() and r.image_conditions()
    with pytest.raises(ValueError):
        retract_delta0(-1)


def test_retract_of_identity_fails_for_non_iso():
    f = terminal_map(boundary(1))
    g = terminal_map(standard(1))
    assert is_retract(f, g) is None
    assert is_retract(g, g) is not None


def _simplex(m, values):
    S = standard(m)
    for c in levels(S, len(values) - 1):
        if compose(S.arrows[c.gen][0], c.epis[0]).values == tuple(values):
            return c
    raise KeyError(values)


def _induced(tau: OrdinalMap):
    return classifying_map(standard(tau.dom), standard(tau.cod), _simplex(tau.cod, tau.values))


@pytest.mark.parametrize("n", [0, 1, 2])
def test_vertex_inclusion_is_retract_of_product_inclusion(n):
    Dn, D1 = standard(n), standard(1)
    P = product(Dn, D1)
    g = P.tuple_map([identity_map(Dn), vertex_map(D1, 0) @ terminal_map(Dn)])
    f = vertex_map(standard(n + 1), 0)
    assert is_retract(f, g) is not None
    # the witness built from α and β directly
    r = retract_delta0(n)
    s_bot = P.tuple_map([_induced(r.alpha[0]), _induced(r.alpha[1])])
    s_top = vertex_map(Dn, 0)
    beta_cells = []
    for c in P.obj.generators:
        a, b = (leg.map_cell(P.obj.cell(c)) for leg in P.legs)
        va = compose(Dn.arrows[a.gen][0], a.epis[0]).values
        vb = compose(D1.arrows[b.gen][0], b.epis[0]).values
        beta_cells.append(_simplex(n + 1, [r.beta[(x, y)] for x, y in zip(va, vb)]))
    r_bot = type(s_bot)(P.obj, standard(n + 1), beta_cells)
    r_bot.validate()
    r_top = terminal_map(Dn)
    assert retract_check(f, g, RetractWitness(s_top, s_bot, r_top, r_bot))
