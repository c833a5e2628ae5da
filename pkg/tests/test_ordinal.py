from math import comb

import pytest

import oracles
from segalkit.ordinal import (
    DimensionError,
    OrdinalMap,
    compose,
    cone,
    degeneracy,
    delta_tuple,
    enumerate_maps,
    epi_mono_factor,
    face,
    identity,
    injections,
    opposite,
    shift,
    surjections,
    twist,
)


def test_compose_face_examples():
    assert compose(face(2, 2), face(0, 1)).values == (1,)
    assert compose(identity(2), face(1, 2)) == face(1, 2)
    assert compose(degeneracy(0, 0), face(0, 1)) == identity(0)


def test_named_maps():
    assert delta_tuple((0, 0), 1).values == (0, 0)
    assert shift(2, 1, 3).values == (2, 3)
    assert face(0, 1).values == (1,)
    with pytest.raises(DimensionError):
        face(3, 2)
    with pytest.raises(DimensionError):
        OrdinalMap((1, 0), 1)


def test_opposite_and_twist_examples():
    assert opposite(face(0, 1)) == face(1, 1)
    assert twist(face(0, 1)).values == (0, 3)
    assert twist(identity(1)) == identity(3)
    assert cone(face(0, 1)).values == (0, 2)


@pytest.mark.parametrize("n,m", [(n, m) for n in range(5) for m in range(5)])
def test_enumerate_maps_against_brute_force(n, m):
    got = [t.values for t in enumerate_maps(n, m)]
    assert sorted(got) == sorted(oracles.monotone_maps(n, m))
    assert len(got) == comb(n + m + 1, n + 1)


def test_small_enumerations():
    assert [t.values for t in enumerate_maps(1, 1)] == [(0, 0), (0, 1), (1, 1)]
    assert len(enumerate_maps(2, 1)) == 4


def test_epi_mono_example():
    epi, mono = epi_mono_factor(OrdinalMap((1, 1), 2))
    assert epi.values == (0, 0) and epi.cod == 0
    assert mono.values == (1,) and mono.cod == 2


def test_epi_mono_exhaustive():
    for n in range(5):
        for m in range(5):
            for t in enumerate_maps(n, m):
                epi, mono = epi_mono_factor(t)
                assert epi.is_surjective() and mono.is_injective()
                assert compose(mono, epi) == t


def test_opposite_twist_against_oracle():
    for n in range(4):
        for m in range(4):
            for t in enumerate_maps(n, m):
                assert opposite(t).values == oracles.opposite(t.values, m)
                assert twist(t).values == oracles.twist(t.values, m)
                assert opposite(opposite(t)) == t


def test_surjection_injection_counts():
    for n in range(5):
        for k in range(n + 1):
            assert len(surjections(n, k)) == comb(n, k)
            assert len(injections(k, n)) == comb(n + 1, k + 1)
