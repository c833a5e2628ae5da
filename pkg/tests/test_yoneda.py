import pytest

import oracles
from segalkit.bisset import F
from segalkit.category import (
    SetFunctor,
    constant_functor,
    corepresented_presheaf,
    cyclic_group,
    disc_nerve,
    ordinal_cat,
    poset,
    representable_functor,
)
from segalkit.corpus import categories, functors
from segalkit.ez import find_isomorphism
from segalkit.lifting import check_left_fibration
from segalkit.yoneda import (
    elements,
    evaluation_check,
    fiber_set,
    fully_faithful_yoneda_check,
    psi_checks,
    twist_fiber,
    under,
    under_retraction,
)

CATS = categories()
VEE = poset(["a", "b", "c"], {("a", "b"), ("a", "c")})


def _vertex(X, label):
    return next(g for g in X.vertices() if X.labels[g] == label)


def test_under_small_example():
    X = disc_nerve(ordinal_cat(1))
    U = under(X, _vertex(X, "0"))
    assert len(U.level(0, 0)) == 2
    assert len(under(X, _vertex(X, "1")).level(0, 0)) == 1
    with pytest.raises(ValueError):
        under(X, X.generators_of((1, 0))[0])


@pytest.mark.parametrize("C", [ordinal_cat(1), ordinal_cat(2), VEE], ids=["[1]", "[2]", "vee"])
def test_under_levels_against_oracle(C):
    X = disc_nerve(C)
    for x in C.objects:
        U = under(X, _vertex(X, x))
        sets = representable_functor(C, x).sets
        for n in range(2):
            expected = oracles.elements_count(C, sets, n)
            assert len(U.level(n, 0)) == expected
            assert len(U.level(n, 1)) == expected


def test_under_retraction():
    X = disc_nerve(ordinal_cat(1))
    r = under_retraction(X, _vertex(X, "0"), top=1)
    assert r.holds and r.checked > 0
    r = under_retraction(F(2), 0, top=1)
    assert r.holds


@pytest.mark.parametrize("X", [disc_nerve(ordinal_cat(1)), F(2)], ids=["N[1]", "F2"])
def test_psi_maps(X):
    for x in X.vertices():
        assert psi_checks(X, x, top=2).holds


def _elements_cases():
    for name in ("path1", "path2", "vee", "z2", "idempotent"):
        C = CATS[name]
        for fname, Fn in functors(C):
            yield f"{name}:{fname}", C, Fn


@pytest.mark.parametrize("name,C,Fn", list(_elements_cases()), ids=[c[0] for c in _elements_cases()])
def test_elements_counts_against_oracle(name, C, Fn):
    top = 3 if C.non_identity_cycle() else None
    E = elements(C, Fn, top)
    for n in range(4 if top else C.longest_chain() + 2):
        assert len(E.total.levels((n, 0))) == oracles.elements_count(C, Fn.sets, n)
    assert check_left_fibration(E.projection, 2).holds


def test_elements_small_example():
    C = ordinal_cat(1)
    arrow = next(a.name for a in C.arrows if a.src != a.tgt)
    Fn = SetFunctor(C, {"0": ["a"], "1": ["b", "c"]},
                    {"id0": {"a": "a"}, "id1": {"b": "b", "c": "c"}, arrow: {"a": "b"}})
    Fn.validate()
    E = elements(C, Fn, check=3)
    assert len(E.total.generators_of((0, 0))) == 3
    assert len(E.total.generators_of((1, 0))) == 1
    assert fiber_set(E, "1") == ["b", "c"]


def test_presheaf_elements_are_not_left():
    C = ordinal_cat(1)
    E = elements(C, corepresented_presheaf(C, "0"))
    assert not check_left_fibration(E.projection, 2).holds
    for n in range(3):
        assert len(E.total.levels((n, 0))) == oracles.elements_count(C, E.functor.sets, n, contravariant=True)


@pytest.mark.parametrize("C", [ordinal_cat(1), VEE], ids=["[1]", "vee"])
def test_representable_elements_match_twist_fiber(C):
    X = disc_nerve(C)
    for x in C.objects:
        E = elements(C, representable_functor(C, x))
        Fib = twist_fiber(X, _vertex(X, x))
        assert find_isomorphism(E.total, Fib.obj) is not None


@pytest.mark.parametrize("name", ["path1", "vee", "z2", "iso"])
def test_evaluation(name):
    C = CATS[name]
    for _, Fn in functors(C):
        E = elements(C, Fn, 3 if C.non_identity_cycle() else None)
        for x in C.objects:
            r = evaluation_check(C, x, E)
            assert r.holds and r.maps == r.fiber == len(Fn.sets[x])


def test_evaluation_of_constant_functor():
    C = ordinal_cat(2)
    E = elements(C, constant_functor(C, [0, 1, 2]))
    assert evaluation_check(C, "1", E).maps == 3


@pytest.mark.parametrize("name", sorted(CATS))
def test_yoneda_fibers_are_hom_sets(name):
    r = fully_faithful_yoneda_check(CATS[name])
    assert r.holds and r.natural


def test_yoneda_examples():
    r = fully_faithful_yoneda_check(ordinal_cat(1))
    assert sorted(r.fibers.values()) == [0, 1, 1, 1]
    assert r.fibers[("1", "0")] == 0
    r = fully_faithful_yoneda_check(cyclic_group(2))
    assert set(r.fibers.values()) == {2}
