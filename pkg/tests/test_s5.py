"""Permutation composition, serial/tree folds, derived series, wire format."""

import math

import pytest
from hypothesis import given, settings, strategies as st

from depthbench.meters import CostMeter
from depthbench.s5 import (
    GROUP_ORDER,
    IDENTITY,
    all_perms,
    commutator_subgroup,
    compose,
    derived_series,
    fold_serial,
    fold_tree,
    format_perm,
    format_words,
    inverse,
    memorization_log10,
    parity,
    parse_perm,
    parse_words,
    random_word,
)

from oracles import perm_parity_by_inversions

perms = st.sampled_from(all_perms())


def test_compose_applies_right_then_left():
    swap01 = (1, 0, 2, 3, 4)
    cycle = (1, 2, 3, 4, 0)
    # (swap01 o cycle)(0) = swap01(cycle(0)) = swap01(1) = 0
    assert compose(swap01, cycle) == (0, 2, 3, 4, 1)
    assert compose(cycle, swap01) == (2, 1, 3, 4, 0)


@given(a=perms, b=perms)
def test_compose_pointwise(a, b):
    assert compose(a, b) == tuple(a[b[i]] for i in range(5))


@given(p=perms)
def test_inverse(p):
    assert compose(p, inverse(p)) == IDENTITY
    assert compose(inverse(p), p) == IDENTITY


def test_associativity_exhaustive_sample():
    sample = all_perms()[::7]  # 18 permutations
    for a in sample:
        for b in sample:
            for c in sample:
                assert compose(compose(a, b), c) == compose(a, compose(b, c))


@given(p=perms)
def test_parity_matches_inversion_count(p):
    assert parity(p) == perm_parity_by_inversions(p)


class TestFolds:
    def test_single_element_word(self):
        m = CostMeter()
        p = (2, 0, 1, 3, 4)
        assert fold_serial([p], m) == p
        assert (m.work, m.depth) == (0, 0)
        m = CostMeter()
        assert fold_tree([p], m) == p
        assert (m.work, m.depth) == (0, 0)

    def test_empty_word_rejected(self):
        with pytest.raises(ValueError):
            fold_serial([])
        with pytest.raises(ValueError):
            fold_tree([])

    def test_identity_word(self):
        word = [IDENTITY] * 9
        assert fold_serial(word) == IDENTITY
        assert fold_tree(word) == IDENTITY

    def test_transposition_squares_to_identity(self):
        swap = (1, 0, 2, 3, 4)
        assert fold_serial([swap, swap]) == IDENTITY

    @settings(max_examples=80, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 300))
    def test_tree_equals_serial(self, seed, n):
        word = random_word(seed, n)
        assert fold_tree(word) == fold_serial(word)

    def test_meter_depths(self):
        for n in list(range(1, 65)) + [100, 1000, 4096]:
            word = random_word(n, n)
            ms, mt = CostMeter(), CostMeter()
            assert fold_serial(word, ms) == fold_tree(word, mt)
            assert (ms.work, ms.depth) == (n - 1, n - 1)
            assert mt.work == n - 1
            assert mt.depth == math.ceil(math.log2(n))

    def test_serial_fold_order_matters_example(self):
        # non-commutative: two orders of the same letters differ
        a, b = (1, 0, 2, 3, 4), (0, 2, 1, 3, 4)
        assert fold_serial([a, b]) != fold_serial([b, a])


class TestDerivedSeries:
    def test_orders(self):
        assert derived_series() == [120, 60, 60]

    def test_stabilized_term_is_even_and_perfect(self):
        sub = commutator_subgroup(all_perms())
        assert len(sub) == 60
        assert all(perm_parity_by_inversions(p) == 0 for p in sub)
        # perfect: its own commutator subgroup is itself
        assert commutator_subgroup(sub) == sub

    def test_full_group_order(self):
        assert len(all_perms()) == GROUP_ORDER == 120


class TestWireFormat:
    def test_perm_round_trip(self):
        assert parse_perm("10234") == (1, 0, 2, 3, 4)
        assert format_perm((1, 0, 2, 3, 4)) == "10234"
        with pytest.raises(ValueError):
            parse_perm("11234")
        with pytest.raises(ValueError):
            parse_perm("1023")

    def test_words_round_trip(self):
        word = random_word(8, 12)
        assert parse_words(format_words(word)) == word

    def test_empty_word_file_rejected(self):
        with pytest.raises(ValueError):
            parse_words("\n\n")


def test_random_word_deterministic():
    assert random_word(5, 20) == random_word(5, 20)
    assert random_word(5, 20) != random_word(6, 20)


def test_memorization_figure():
    # e^(n ln 120) == 120^n, reported in log10
    assert memorization_log10(2) == pytest.approx(math.log10(120**2))
    assert memorization_log10(100) == pytest.approx(100 * math.log(120) / math.log(10))
