from math import comb

import pytest

from candy_passing import (
    CompositionOverflow,
    IndexOutOfRange,
    InvalidConfiguration,
    canonical_form,
    composition_count,
    enumerate_compositions,
    rank_composition,
    unrank_composition,
)

from oracle import dihedral_images, naive_compositions


def lists(xs):
    return [x.as_list() for x in xs]


def test_enumerate_examples():
    assert lists(enumerate_compositions(3, 1)) == [[0, 0, 1], [0, 1, 0], [1, 0, 0]]
    assert len(list(enumerate_compositions(3, 4))) == 15
    assert lists(enumerate_compositions(3, 1, canonical_only=True)) == [[0, 0, 1]]


def test_enumerate_rejects_bad_parameters():
    with pytest.raises(InvalidConfiguration):
        list(enumerate_compositions(2, 3))
    with pytest.raises(InvalidConfiguration):
        list(enumerate_compositions(3, 0))


@pytest.mark.parametrize("n, c, expected", [(3, 4, 15), (4, 10, 286), (8, 22, comb(29, 7))])
def test_composition_count(n, c, expected):
    assert composition_count(n, c) == expected


def test_composition_count_edge_cases():
    assert composition_count(1, 0) == 1
    assert composition_count(1, 5) == 1
    with pytest.raises(CompositionOverflow):
        composition_count(40, 200)


@pytest.mark.parametrize("n", range(3, 7))
def test_enumeration_complete_and_ordered(n):
    for c in range(1, 13):
        got = lists(enumerate_compositions(n, c))
        assert len(got) == composition_count(n, c)
        if composition_count(n, c) <= 20000:
            assert got == naive_compositions(n, c)
        else:
            assert got == sorted(got) and len({tuple(g) for g in got}) == len(got)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_canonical_enumeration_one_per_class(n):
    for c in range(1, 9):
        classes = {tuple(min(dihedral_images(x))) for x in naive_compositions(n, c)}
        got = [tuple(x.counts) for x in enumerate_compositions(n, c, canonical_only=True)]
        assert sorted(got) == sorted(classes)
        assert all(canonical_form(x) == x for x in enumerate_compositions(n, c, True))


def test_unrank_examples():
    assert unrank_composition(3, 1, 0).as_list() == [0, 0, 1]
    assert unrank_composition(3, 1, 2).as_list() == [1, 0, 0]
    assert unrank_composition(3, 4, 14).as_list() == [4, 0, 0]
    assert naive_compositions(3, 4)[14] == [4, 0, 0]


@pytest.mark.parametrize("index", [-1, 15])
def test_unrank_out_of_range(index):
    with pytest.raises(IndexOutOfRange):
        unrank_composition(3, 4, index)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_rank_unrank_round_trip(n):
    for c in range(1, 9):
        for i, x in enumerate(enumerate_compositions(n, c)):
            assert unrank_composition(n, c, i) == x
            assert rank_composition(x.counts) == i
