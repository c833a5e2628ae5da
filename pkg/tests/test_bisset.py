from math import comb

import pytest

import oracles
from segalkit.bisset import (
    CONE,
    IOTA,
    MU,
    F,
    bis_skeleton,
    boundary_box,
    box,
    constant,
    dF,
    disc,
    nondegenerate,
    opposite,
    row,
    row_operator,
    skeleton_pushout,
    tau_decompose,
    twist_projection,
    twisted,
)
from segalkit.category import disc_nerve, ordinal_cat, poset
from segalkit.ez import find_isomorphism, identity_map, product
from segalkit.ordinal import enumerate_maps, face
from segalkit.sset import boundary, levels, standard


@pytest.mark.parametrize("n,m", [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2)])
def test_box_level_counts(n, m):
    B = box(n, m)
    B.validate()
    for a in range(3):
        for b in range(3):
            assert len(B.levels((a, b))) == comb(a + n + 1, a + 1) * comb(b + m + 1, b + 1)


def test_box_degenerate_cases():
    for n in range(3):
        assert find_isomorphism(box(n, 0), F(n)) is not None
        assert find_isomorphism(box(0, n), constant(standard(n))) is not None
    assert len(box(1, 1).levels((1, 1))) == 9
    assert len(box(1, 1)) == 9
    with pytest.raises(ValueError):
        box(-1, 0)


def test_boundary_box():
    assert find_isomorphism(boundary_box(1, 0), dF(1)) is not None
    assert len(boundary_box(1, 1)) == 8
    assert find_isomorphism(bis_skeleton(box(1, 1), 1), boundary_box(1, 1)) is not None


def test_rows():
    R = row(box(1, 1), 0)
    assert [len(levels(R, k)) for k in range(4)] == [4, 6, 8, 10]
    for n in range(3):
        for k in range(3):
            Rk = row(F(n), k)
            assert all(d == (0,) for d in Rk.dims)
            assert len(Rk) == comb(k + n + 1, k + 1)
    Y = boundary(2)
    assert find_isomorphism(row(constant(Y), 2), Y) is not None


def test_row_operator_is_a_map():
    X = box(1, 1)
    for t in enumerate_maps(1, 2):
        row_operator(X, t).validate()


def test_nondegenerate_counts_of_F():
    for n in range(4):
        nd = nondegenerate(F(n))
        assert set(nd) == {(d, 0) for d in range(n + 1)}
        for d in range(n + 1):
            assert len(nd[(d, 0)]) == comb(n + 1, d + 1)


def test_products_of_F():
    P = product(F(1), F(1)).obj
    assert len(P.generators_of((2, 0))) == 2
    assert len(P.levels((1, 0))) == 9


@pytest.mark.parametrize("phi", [IOTA, MU, CONE])
def test_delta_functors_are_functorial(phi):
    assert phi.check_functorial(3)


def test_opposite_examples():
    assert find_isomorphism(opposite(F(1)), F(1)) is not None
    X = disc(boundary(2))
    assert find_isomorphism(opposite(opposite(X)), X) is not None
    V = poset(["a", "b", "c"], {("a", "b"), ("a", "c")})
    N = disc_nerve(V)
    for n in range(3):
        assert len(opposite(N).levels((n, 0))) == len(N.levels((n, 0)))


def test_twisted_levels_against_chain_oracle():
    C = ordinal_cat(2)
    N = disc_nerve(C)
    M = twisted(N)
    for n in range(3):
        assert len(M.levels((n, 0))) == oracles.chain_count(C, 2 * n + 1)
    assert find_isomorphism(row(twisted(F(2)), 0), row(F(2), 1)) is not None


def test_twist_projection_is_natural():
    for X in (F(1), F(2), disc_nerve(ordinal_cat(1))):
        twist_projection(X).map.validate()


def test_skeleton_pushout_compares_isomorphically():
    for X in (box(1, 1), F(2), disc(boundary(2))):
        for n in range(1, 4):
            P, comp = skeleton_pushout(X, n)
            comp.validate()
            assert comp.is_iso()
    with pytest.raises(ValueError):
        skeleton_pushout(F(1), 0)


@pytest.mark.parametrize("m", [0, 1, 2])
def test_tau_pieces(m):
    P = product(F(1), F(m))
    p = identity_map(P.obj)
    for n in range(3):
        pieces = tau_decompose(p, P, n)
        assert len(pieces) == comb(n + m + 1, n + 1)
        for t, (piece, inc, to_B) in pieces.items():
            inc.validate()
            # each piece is a copy of F[1]_n
            assert len(piece) == n + 2
            assert to_B.is_iso()


def test_tau_decompose_rejects_bad_target():
    P = product(F(1), disc(boundary(1)))
    with pytest.raises(ValueError):
        tau_decompose(identity_map(P.obj), P, 0)


def test_face_of_box_generator():
    B = box(1, 0)
    top = B.cell(B.generators_of((1, 0))[0])
    v = B.face_of(top, 0, 0)
    assert B.arrows[v.gen][0] == face(0, 1)
