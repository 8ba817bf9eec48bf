"""Piece enumeration and condition checking, cross-checked against naive
oracles and against the class-level fast engine."""

import random
from fractions import Fraction

import pytest

from conftest import ABC, naive_max_pieces, random_cyclic_word
from cgtoolkit import fastpieces as fp
from cgtoolkit.errors import InvalidSpec
from cgtoolkit.pieces import (CancellationParams, KDescriptor,
                              check_condition, enumerate_k_pieces,
                              enumerate_pieces, enumerate_self_pieces,
                              metric_condition)
from cgtoolkit.words import Alphabet, Word, symmetrize


def _parse_set(texts, alphabet=ABC):
    return symmetrize([Word.parse(t, alphabet) for t in texts], alphabet)


def test_torus_pieces():
    rset = _parse_set(["a b a^-1 b^-1"], Alphabet(["a", "b"]))
    report = enumerate_pieces(rset)
    assert report.max_piece_overall() == 1
    for w, entry in report.relators.items():
        assert len(w) == 4
        assert entry.max_piece == 1
        assert entry.piece_witness is not None
        assert entry.piece_witness.replays()


def test_genus2_pieces(genus2):
    report = enumerate_pieces(genus2.relators)
    assert report.max_piece_overall() == 1
    assert all(len(w) == 8 for w in report.relators)


def test_pieces_match_naive_oracle_random():
    rng = random.Random(7)
    for _ in range(60):
        seeds = [random_cyclic_word(rng, 3, rng.randint(2, 12))
                 for _ in range(rng.randint(1, 4))]
        rset = symmetrize(seeds, ABC)
        report = enumerate_pieces(rset)
        oracle = naive_max_pieces(rset)
        assert {w: e.max_piece for w, e in report.relators.items()} == oracle


def test_class_engine_matches_rotation_scan_random():
    rng = random.Random(11)
    for _ in range(40):
        seeds = [random_cyclic_word(rng, 2, rng.randint(2, 10))
                 for _ in range(rng.randint(1, 3))]
        rset = symmetrize(seeds, ABC)
        indexes = fp.build_indexes(rset)
        piece_max = fp.class_piece_maxima(indexes)
        self_max = fp.class_self_piece_maxima(indexes)
        pieces = enumerate_pieces(rset)
        selfs = enumerate_self_pieces(rset)
        for i, cls in enumerate(rset.classes):
            rots = cls.rotations()
            assert piece_max[i] == max(
                pieces.relators[w].max_piece for w in rots)
            assert self_max[i] == max(
                selfs.relators[w].max_self_piece for w in rots)


def test_self_pieces_examples():
    rset = _parse_set(["a b a b"])
    report = enumerate_self_pieces(rset)
    entry = report.relators[Word.parse("a b a b", ABC)]
    assert entry.max_self_piece == 2
    assert entry.self_piece_witness.replays()

    rset = _parse_set(["a^4"])
    report = enumerate_self_pieces(rset)
    assert report.relators[Word.parse("a^4", ABC)].max_self_piece == 2

    # inverse occurrence also counts: a b a^-1 contains b and b^-1... the
    # commutator has self-piece 1 (single letters repeat up to inversion)
    rset = _parse_set(["a b a^-1 b^-1"])
    report = enumerate_self_pieces(rset)
    assert report.relators[Word.parse("a b a^-1 b^-1", ABC)].max_self_piece == 1


def test_k_descriptor_sub_alphabet():
    rset = _parse_set(["a^3 b c"])
    k = KDescriptor.sub_alphabet([0])
    report = enumerate_k_pieces(rset, k)
    entry = report.relators[Word.parse("a^3 b c", ABC)]
    assert entry.max_k_pieces == [3]
    assert entry.k_piece_witnesses[0].piece() == Word.parse("a^3", ABC)


def test_k_descriptor_cyclic_powers():
    rset = _parse_set(["a^4 b"])
    k = KDescriptor.cyclic_powers(Word.parse("a", ABC))
    report = enumerate_k_pieces(rset, k)
    assert report.relators[Word.parse("a^4 b", ABC)].max_k_pieces == [4]
    # inverse powers count too
    rset2 = _parse_set(["a^-3 b"])
    report2 = enumerate_k_pieces(rset2, k)
    assert report2.relators[Word.parse("a^-3 b", ABC)].max_k_pieces == [3]


def test_k_descriptor_finite_list():
    rset = _parse_set(["a b c a"])
    k = KDescriptor.finite_list([Word.parse("b c", ABC)])
    report = enumerate_k_pieces(rset, k)
    assert report.relators[Word.parse("a b c a", ABC)].max_k_pieces == [2]
    with pytest.raises(InvalidSpec):
        KDescriptor("bogus")


def test_check_condition_items(torus, genus2):
    params = CancellationParams(mu=Fraction(1, 6), rho=1)
    assert not check_condition(torus.relators, params).passed
    assert check_condition(genus2.relators, params).passed

    # rho failure
    big_rho = CancellationParams(mu=Fraction(1, 3), rho=9)
    result = check_condition(genus2.relators, big_rho)
    assert not result.item_verdicts["length"]
    assert any("rho" in f for f in result.failures)

    # quasigeodesity is vacuous over a free background
    assert check_condition(genus2.relators, params).item_verdicts["quasigeodesic"]


def test_check_condition_k_pieces(genus2):
    params = CancellationParams(mu=Fraction(1, 6), rho=1)
    k = KDescriptor.sub_alphabet([0, 1, 2, 3])  # every subword is a K-piece
    result = check_condition(genus2.relators, params, [k])
    assert not result.item_verdicts["k_pieces"]
    assert not result.passed


def test_invalid_params():
    with pytest.raises(InvalidSpec):
        CancellationParams(mu=Fraction(2), rho=1)
    with pytest.raises(InvalidSpec):
        CancellationParams(mu=Fraction(1, 6), rho=0)
    with pytest.raises(InvalidSpec):
        metric_condition(_parse_set(["a b"]), Fraction(3, 2))


def test_metric_condition_examples(torus, genus2):
    assert not metric_condition(torus.relators, Fraction(1, 6))
    assert metric_condition(torus.relators, Fraction(1, 3))
    assert metric_condition(genus2.relators, Fraction(1, 6))


def test_fast_metric_condition_agrees_with_small():
    rng = random.Random(3)
    for _ in range(30):
        seeds = [random_cyclic_word(rng, 2, rng.randint(3, 10))
                 for _ in range(rng.randint(1, 3))]
        rset = symmetrize(seeds, ABC)
        indexes = fp.build_indexes(rset)
        maxima = dict(zip((c.rep for c in rset.classes),
                          fp.class_piece_maxima(indexes)))
        for lam in (Fraction(1, 6), Fraction(1, 3), Fraction(1, 2)):
            small = metric_condition(rset, lam)
            fast = all(m * lam.denominator < lam.numerator * len(rep)
                       for rep, m in maxima.items())
            assert small == fast


def test_witnesses_replay_on_fast_path():
    # a set large enough to route check_condition through the class engine
    rng = random.Random(5)
    seeds = [random_cyclic_word(rng, 2, rng.randint(65, 90))
             for _ in range(4)]
    rset = symmetrize(seeds, ABC)
    assert rset.max_length() > 64  # fast path
    result = check_condition(rset, CancellationParams(Fraction(1, 50), 1))
    assert not result.passed  # random words share long subwords vs 1/50
    witnessed = [e for e in result.relators.values() if e.piece_witness]
    assert witnessed
    for entry in witnessed:
        w = entry.piece_witness
        assert w.replays()
        assert len(w.piece()) == entry.max_piece
