import random

import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

import oracles
from segalkit.bisset import F
from segalkit.category import cyclic_group, nerve
from segalkit.ez import coproduct, identity_map, restrict
from segalkit.homology import (
    WEVerdict,
    chain_complex,
    cone_complex,
    homology,
    matmul,
    smith_normal_form,
    we_necessary,
)
from segalkit.lifting import Family, family_members
from segalkit.sset import boundary, horn, standard, terminal_map, vertex_map


def from_facets(facets, m):
    faces = oracles.closure(facets)
    S = standard(m)
    keep = [g for g in S.generators if frozenset(S.arrows[g][0].values) in faces]
    return restrict(S, keep)[0]


COMPLEXES = {
    "Δ3": ([range(4)], 3),
    "∂Δ3": (oracles.boundary_facets(3), 3),
    "Λ1[3]": (oracles.horn_facets(3, 1), 3),
    "circle+point": ([(0, 1), (1, 2), (0, 2), (3,)], 3),
    "two circles": ([(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)], 4),
    "hollow square": ([(0, 1), (1, 3), (0, 2), (2, 3)], 3),
    "filled bowtie": ([(0, 1, 2), (2, 3, 4)], 4),
    "octahedron-ish": ([(0, 1, 2), (0, 2, 3), (0, 1, 3), (1, 2, 4), (2, 3, 4), (1, 3, 4)], 4),
}


@pytest.mark.parametrize("name", sorted(COMPLEXES))
def test_homology_against_oracle(name):
    facets, m = COMPLEXES[name]
    X = from_facets(facets, m)
    for d in range(4):
        assert homology(X, d).as_tuple() == oracles.homology_oracle(facets, d)


def test_spheres_and_points():
    for n in range(1, 4):
        for d in range(n + 1):
            want = (1, ()) if d in (0, n - 1) else (0, ())
            if n == 1 and d == 0:
                want = (2, ())
            assert homology(boundary(n), d).as_tuple() == want
    for d in range(4):
        assert homology(standard(3), d).as_tuple() == ((1, ()) if d == 0 else (0, ()))


def test_boundary_matrices():
    C = chain_complex(boundary(2))
    assert C.ranks == [3, 3]
    assert sorted(sum(col) for col in zip(*C.matrix(1))) == [0, 0, 0]
    D = chain_complex(standard(1))
    assert [sorted(r[0] for r in D.matrix(1))] == [[-1, 1]]
    for d in range(1, 4):
        K = chain_complex(standard(3))
        prod = matmul(K.matrix(d), K.matrix(d + 1))
        assert all(v == 0 for row in prod for v in row)
    with pytest.raises(ValueError):
        chain_complex(F(1))


def _sympy_homology(C, d):
    def rank(M):
        return Matrix(M).rank() if M and M[0] else 0
    n = C.ranks[d] if d < len(C.ranks) else 0
    M = C.matrix(d + 1)
    tors = ()
    if rank(M):
        S = sympy_snf(Matrix(M), domain=ZZ)
        tors = tuple(sorted(abs(S[i, i]) for i in range(min(S.shape)) if abs(S[i, i]) > 1))
    return n - (rank(C.matrix(d)) if d else 0) - rank(M), tors


def test_torsion_in_group_nerves():
    assert homology(nerve(cyclic_group(3), 2), 1).as_tuple() == (0, (3,))
    N = nerve(cyclic_group(2), 3)
    C = chain_complex(N)
    assert homology(N, 1).as_tuple() == (0, (2,)) == _sympy_homology(C, 1)
    for d in range(3):
        assert homology(N, d).as_tuple() == _sympy_homology(C, d)


def test_snf_against_sympy():
    rng = random.Random(7)
    for _ in range(150):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        M = [[rng.randint(-4, 4) for _ in range(c)] for _ in range(r)]
        factors, rank = smith_normal_form(M)
        assert rank == Matrix(M).rank()
        S = sympy_snf(Matrix(M), domain=ZZ)
        diag = sorted(abs(S[i, i]) for i in range(min(S.shape)) if S[i, i] != 0)
        assert sorted(factors) == [x for x in diag if x > 1]
        assert all(b % a == 0 for a, b in zip(factors, factors[1:]))


def test_coproduct_is_additive():
    A, B = boundary(2), boundary(3)
    X = coproduct(A, B).obj
    for d in range(3):
        assert homology(X, d).betti == homology(A, d).betti + homology(B, d).betti


def test_cone_of_identity_is_acyclic():
    f = identity_map(boundary(2))
    K = cone_complex(f)
    for d in range(4):
        assert _sympy_homology(K, d) == (0, ())


def test_we_necessary_cases():
    assert we_necessary(identity_map(boundary(2)), 2).verdict is WEVerdict.CONSISTENT
    r = we_necessary(terminal_map(boundary(1)), 2)
    assert r.verdict is WEVerdict.REFUTED and r.reason == "π0 not injective"
    i = dict(family_members(Family.KAN_BOUNDARY, 2))[("boundary", 2)]
    r = we_necessary(i, 2)
    assert r.verdict is WEVerdict.REFUTED and r.reason == "H1 groups differ"
    j = dict(family_members(Family.KAN_HORN, 2))[("horn", 2, 1)]
    assert we_necessary(j, 3).verdict is WEVerdict.CONSISTENT
    v = vertex_map(standard(1), 0)
    assert we_necessary(v, 2).verdict is WEVerdict.CONSISTENT


def test_we_necessary_needs_the_cone():
    S = boundary(2)
    const = vertex_map(S, 0) @ terminal_map(S)
    r = we_necessary(const, 1)
    assert r.verdict is WEVerdict.REFUTED and r.reason.startswith("mapping cone has H1")
    r = we_necessary(vertex_map(boundary(1), 0), 1)
    assert r.reason == "π0 not surjective"


def test_horn_is_contractible():
    for d in range(3):
        assert homology(horn(3, 0), d).as_tuple() == ((1, ()) if d == 0 else (0, ()))
