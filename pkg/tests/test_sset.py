from math import comb

import pytest

import oracles
from segalkit.ez import (
    EZMap,
    InvariantViolation,
    ResourceLimit,
    coproduct,
    fiber,
    find_isomorphism,
    hom_enum,
    identity_map,
    point,
    product,
    pullback,
    pushout,
    restrict,
)
from segalkit.ordinal import enumerate_maps, face
from segalkit.sset import (
    apply,
    boundary,
    homotopic_over,
    horn,
    levels,
    map_space_level,
    map_space_over,
    pi0,
    skeleton,
    standard,
    terminal_map,
    vertex_map,
)

SHAPES = [
    ("standard", standard, oracles.standard_facets),
    ("boundary", boundary, oracles.boundary_facets),
]


@pytest.mark.parametrize("name,make,facets", SHAPES)
@pytest.mark.parametrize("m", [1, 2, 3])
def test_level_counts_against_oracle(name, make, facets, m):
    X = make(m)
    X.validate()
    for n in range(4):
        assert len(levels(X, n)) == len(oracles.simplices(facets(m), n))
        assert len(X.generators_of((n,))) == oracles.nondegenerate(facets(m), n)


@pytest.mark.parametrize("m,k", [(2, 0), (2, 1), (3, 1), (3, 3)])
def test_horn_counts(m, k):
    H = horn(m, k)
    for n in range(4):
        assert len(levels(H, n)) == len(oracles.simplices(oracles.horn_facets(m, k), n))


def test_small_examples():
    assert len(standard(1)) == 3
    B = boundary(1)
    assert len(B) == 2 and len(pi0(B)) == 2
    H = horn(2, 1)
    assert len(H.generators_of((0,))) == 3 and len(H.generators_of((1,))) == 2
    assert len(levels(standard(1), 1)) == 3
    # three edges plus one degenerate edge per vertex
    assert len(levels(boundary(2), 1)) == 6
    assert len(levels(standard(0), 3)) == 1


def test_face_of_top_simplex():
    S = standard(2)
    top = S.cell(S.generators_of((2,))[0])
    e = apply(S, face(0, 2), top)
    assert e.is_generator() and S.arrows[e.gen][0].values == (1, 2)


def test_functoriality_on_standard2():
    S = standard(2)
    for s in levels(S, 3):
        assert apply(S, enumerate_maps(3, 3)[0], s) is not None
        for k in range(4):
            for tau in enumerate_maps(k, 3):
                for sig in enumerate_maps(2, k):
                    lhs = apply(S, sig, apply(S, tau, s))
                    rhs = apply(S, tau @ sig, s)
                    assert lhs == rhs


def test_products():
    P = product(standard(1), standard(1))
    assert len(P.obj.generators_of((2,))) == 2
    assert len(levels(P.obj, 1)) == 9
    Q = product(standard(0), boundary(2))
    assert find_isomorphism(Q.obj, boundary(2)) is not None
    for a in range(3):
        for b in range(3):
            R = product(standard(a), standard(b)).obj
            for n in range(3):
                assert len(levels(R, n)) == comb(n + a + 1, n + 1) * comb(n + b + 1, n + 1)


def test_pushout_counts_and_identity_leg():
    d = vertex_map(standard(1), 0)
    P = pushout(d, d)
    for n in range(3):
        assert len(levels(P.obj, n)) == 2 * len(levels(standard(1), n)) - 1
    Y = standard(2)
    iY = identity_map(Y)
    assert find_isomorphism(pushout(iY, iY).obj, Y) is not None


def test_boundary2_as_glued_edges():
    # three edges glued pairwise at their endpoints
    E = coproduct(standard(1), standard(1), standard(1)).obj
    assert len(E) == 9
    B = boundary(2)
    assert len(B.generators_of((0,))) == 3 and len(B.generators_of((1,))) == 3
    assert sum(1 for _ in hom_enum(standard(1), B)) == len(levels(B, 1))


def test_pushout_needs_a_mono_leg():
    t = terminal_map(boundary(1))
    with pytest.raises(NotImplementedError):
        pushout(t, t)


def test_fibers_and_pullbacks():
    P = product(standard(1), boundary(1))
    F = fiber(P.pr1, 0)
    assert find_isomorphism(F.obj, boundary(1)) is not None
    PB = pullback(terminal_map(standard(1)), terminal_map(standard(2)))
    assert len(levels(PB.obj, 0)) == 6


def test_hom_enum_counts():
    assert sum(1 for _ in hom_enum(standard(1), standard(1))) == 3
    assert sum(1 for _ in hom_enum(horn(2, 1), standard(1))) == 4
    assert sum(1 for _ in hom_enum(boundary(2), point(1))) == 1
    for n in range(4):
        for m in range(4):
            assert sum(1 for _ in hom_enum(standard(n), standard(m))) == comb(n + m + 1, n + 1)


def test_mapping_spaces():
    assert len(map_space_level(standard(1), standard(1), 0)) == 3
    assert len(map_space_level(standard(0), horn(2, 0), 1)) == len(levels(horn(2, 0), 1))
    idX = identity_map(standard(1))
    assert any(m.assignment == idX.assignment for m in map_space_over(idX, idX, 0))


def test_homotopic_over():
    v0, v1 = vertex_map(standard(1), 0), vertex_map(standard(1), 1)
    p = terminal_map(standard(1))
    q = terminal_map(standard(0))
    assert homotopic_over(q, p, v0, v1)
    B = boundary(1)
    w0, w1 = vertex_map(B, 0), vertex_map(B, 1)
    assert not homotopic_over(q, terminal_map(B), w0, w1)


def test_skeleta():
    assert find_isomorphism(skeleton(standard(2), 1), boundary(2)) is not None
    assert len(skeleton(standard(3), -1)) == 0
    sizes = [len(skeleton(standard(3), k)) for k in range(-1, 4)]
    assert sizes == sorted(sizes) and sizes[-1] == len(standard(3))


def test_pi0():
    assert len(pi0(standard(3))) == 1
    C = coproduct(boundary(1), standard(2), standard(0)).obj
    assert len(pi0(C)) == 4


def test_restrict_is_mono():
    S = standard(2)
    edge = S.generators_of((1,))[0]
    keep = [edge] + [c.gen for c in S.faces[edge][0]]
    X, inc = restrict(S, keep)
    assert inc.is_mono()
    X.validate()


def test_resource_cap(monkeypatch):
    monkeypatch.setenv("SEGALKIT_MAX_CELLS", "5")
    with pytest.raises(ResourceLimit):
        product(standard(2), standard(2))


def test_map_composition_checks_objects():
    f = identity_map(standard(1))
    g = identity_map(standard(2))
    with pytest.raises((ValueError, InvariantViolation)):
        g @ f
    EZMap(standard(0), standard(1), [standard(1).cell(0)]).validate()
