"""Acceptance suite: the nine primary criteria, with their runtime budgets.

Criteria with a stated wall-clock budget assert it; the rest only assert the
zero-failure contracts.
"""

import itertools
import random
import time
from fractions import Fraction

import pytest

from conftest import (ABC, naive_max_pieces, random_cyclic_word,
                      random_reduced_word)
from cgtoolkit.dehn import (abelianization_vector, decide, dehn_reduce,
                            replay_certificate)
from cgtoolkit.errors import SearchBoundExceeded
from cgtoolkit.families import FamilySpec, certify_family, duplicate_block
from cgtoolkit.hnn import (britton_reduce, hexagon_check_free,
                           stable_letter_count)
from cgtoolkit.invgen import (class_representatives, finite_index_ig_check,
                              ig_by_actions, ig_by_bruteforce,
                              ig_by_subgroups, min_ig_size)
from cgtoolkit.perms import conjugacy_classes, quotient, subgroup_lattice
from cgtoolkit.pieces import (CancellationParams, check_condition,
                              enumerate_pieces, metric_condition)
from cgtoolkit.words import Word, WordMap, XY, symmetrize


def test_criterion_1_three_way_equivalence(library):
    """All class-representative subsets with |S| <= 2, plus 50 random
    |S| = 3 samples per group: identical verdicts from the three checkers."""
    start = time.monotonic()
    rng = random.Random(2024)
    disagreements = []
    for name, g in library.items():
        reps = class_representatives(g)
        classes = conjugacy_classes(g)
        samples = [list(c) for size in (1, 2)
                   for c in itertools.combinations(reps, size)]
        samples += [[rng.choice(reps) for _ in range(3)] for _ in range(50)]
        seen = set()
        for s in samples:
            # verdicts depend only on the class multiset (conjugation
            # invariance), so each distinct multiset is evaluated once
            key = tuple(sorted(classes.class_of(x) for x in s))
            if key in seen:
                continue
            seen.add(key)
            try:
                verdicts = {ig_by_subgroups(g, s).invariably_generates,
                            ig_by_bruteforce(g, s).invariably_generates,
                            ig_by_actions(g, s).invariably_generates}
            except SearchBoundExceeded:
                continue
            if len(verdicts) != 1:
                disagreements.append((name, s))
    assert disagreements == []
    assert time.monotonic() - start < 60.0


def _candidate_subsets(rng, reps):
    """Empty set, a few singletons, and a couple of random pairs."""
    out = [[]]
    singles = reps if len(reps) <= 3 else rng.sample(reps, 3)
    out += [[r] for r in singles]
    if len(reps) >= 2:
        out += [rng.sample(reps, 2) for _ in range(2)]
    return out


def test_criterion_2_extension_harness(library):
    """Over all chains (G, N normal, H >= N) and sampled (S, S') whose
    hypotheses verify, the combined set invariably generates G."""
    start = time.monotonic()
    rng = random.Random(4096)
    counterexamples = []
    verified = 0
    for name, g in library.items():
        lattice = subgroup_lattice(g)
        g_reps = class_representatives(g)
        for n in lattice:
            if not n.normal:
                continue
            quot, elem_map = quotient(g, n)
            sp_candidates = _candidate_subsets(rng, g_reps)
            sp_verified = []
            for sp in sp_candidates:
                images = [quot.elements[elem_map[g.index[x]]] for x in sp]
                if ig_by_subgroups(quot, images).invariably_generates:
                    sp_verified.append(sp)
            for h in lattice:
                if not n.mask <= h.mask:
                    continue
                h_group = h.as_group()
                h_reps = class_representatives(h_group)
                for s in _candidate_subsets(rng, h_reps):
                    if not ig_by_subgroups(h_group, s).invariably_generates:
                        continue
                    for sp in sp_verified:
                        combined = list(s) + [x for x in sp if x not in s]
                        verified += 1
                        ok = ig_by_subgroups(
                            g, combined).invariably_generates
                        if not ok:
                            counterexamples.append((name, s, sp))
    assert verified > 0
    assert counterexamples == []
    assert time.monotonic() - start < 120.0


def test_criterion_3_theorem_a_path(library):
    """finite_index_ig_check concludes for every proper subgroup of every
    library group equipped with a verified IG set."""
    failures = []
    for name, g in library.items():
        for h in subgroup_lattice(g):
            if not h.is_proper():
                continue
            found = min_ig_size(h.as_group())
            assert found is not None, (name, h.order)
            _, s = found
            report = finite_index_ig_check(g, h, s)
            if not report.concluded:
                failures.append((name, h.order))
    assert failures == []


def test_criterion_4_family_certification():
    """The full (m, mu', rho') grid certifies; 20 single-block-duplication
    mutants fail with replayable witnesses."""
    start = time.monotonic()
    for m in range(1, 6):
        for mu in (Fraction(1, 2), Fraction(1, 6), Fraction(1, 12)):
            for rho in (10, 50):
                result = certify_family(FamilySpec(m, mu, rho))
                assert result.passed, (m, mu, rho, result.failures)

    mutants = 0
    for mu in (Fraction(1, 6), Fraction(1, 12)):
        spec = FamilySpec(m=2, mu_prime=mu, rho_prime=10)
        n = spec.block_exponent
        for k in range(n - 10, n):
            words = duplicate_block(spec, 1, 2, k)
            rset = symmetrize(words, XY)
            result = check_condition(rset, CancellationParams(mu, 10))
            assert not result.passed, (mu, k)
            breaching = [
                e for e in result.relators.values()
                if e.max_piece * mu.denominator
                >= mu.numerator * len(e.relator)
            ]
            assert breaching, (mu, k)
            witnesses = [e.piece_witness for e in breaching
                         if e.piece_witness is not None]
            assert witnesses and all(w.replays() for w in witnesses), (mu, k)
            mutants += 1
    assert mutants == 20
    assert time.monotonic() - start < 30.0


def test_criterion_5_piece_oracle_equivalence():
    """Indexed enumeration equals the naive all-pairs scan on 500 random
    symmetrized sets (seeds <= 8, lengths <= 30)."""
    rng = random.Random(5005)
    for _ in range(500):
        seeds = [random_cyclic_word(rng, 3, rng.randint(2, 30))
                 for _ in range(rng.randint(1, 8))]
        rset = symmetrize(seeds, ABC)
        indexed = {w: e.max_piece
                   for w, e in enumerate_pieces(rset).relators.items()}
        assert indexed == naive_max_pieces(rset)


def test_criterion_6_dehn_soundness_completeness(genus2):
    start = time.monotonic()
    assert genus2.c16_certified
    report = enumerate_pieces(genus2.relators)
    assert report.max_piece_overall() == 1
    assert all(len(w) == 8 for w in report.relators)

    rng = random.Random(606)
    relators = genus2.relators.sorted_words()
    for _ in range(200):
        w = Word()
        for _ in range(rng.randint(1, 5)):
            conj = random_reduced_word(rng, 4, rng.randint(0, 5))
            w = w * rng.choice(relators).conjugate(conj)
        verdict = decide(genus2, w)
        assert verdict.kind == "trivial"
        assert not replay_certificate(w, verdict.trace)
        _, member = abelianization_vector(genus2, w)
        assert member  # trivial verdicts pass the abelianization cross-check

    produced = 0
    while produced < 200:
        w = random_reduced_word(rng, 4, rng.randint(1, 16))
        residual, _ = dehn_reduce(genus2, w)
        if not residual:
            continue
        verdict = decide(genus2, residual)
        assert verdict.kind == "nontrivial_certified"
        assert not verdict.trace.steps  # residuals are Dehn-irreducible
        produced += 1
    assert time.monotonic() - start < 60.0


def test_criterion_7_britton_round_trip(double_hnn):
    rng = random.Random(707)
    alphabet = double_hnn.alphabet
    assocs = {a.letter: a for a in double_hnn.associations}
    for _ in range(300):
        base_word = random_reduced_word(rng, 4, rng.randint(0, 10))
        current = base_word
        for _ in range(rng.randint(1, 4)):
            letter = rng.choice(double_hnn.stable_letters)
            assoc = assocs[letter]
            s = Word.generator(alphabet.index(letter))
            e = rng.choice([-2, -1, 1, 2])
            if rng.random() < 0.5:
                identity = s.inverse() * assoc.g ** e * s * assoc.w ** -e
            else:
                identity = s * assoc.w ** e * s.inverse() * assoc.g ** -e
            pos = rng.randint(0, len(current))
            current = Word(current.letters[:pos] + identity.letters
                           + current.letters[pos:])
        reduced = britton_reduce(double_hnn, current)
        assert stable_letter_count(double_hnn, reduced) == 0
        assert reduced == base_word
        assert britton_reduce(double_hnn, reduced) == reduced


def test_criterion_8_hexagon_base_case(double_hnn):
    alphabet = double_hnn.base.alphabet
    phi = WordMap.from_pairs(alphabet, {"x": "y", "y": "x", "x'": "y'", "y'": "x'"},
                             involution=True)
    sub = frozenset({alphabet.index("x"), alphabet.index("x'")})
    rng = random.Random(808)
    for _ in range(1000):
        xi = random_reduced_word(rng, 2, rng.randint(1, 10))
        xi_prime = random_reduced_word(rng, 2, rng.randint(1, 10))
        assert hexagon_check_free(xi, xi_prime, phi, sub).holds


def test_criterion_9_torus_vs_genus2(torus, genus2):
    assert not metric_condition(torus.relators, Fraction(1, 6))
    assert metric_condition(torus.relators, Fraction(1, 3))
    assert metric_condition(genus2.relators, Fraction(1, 6))
    # the brute-force oracle confirms the underlying piece maxima
    assert max(naive_max_pieces(torus.relators).values()) == 1
    assert max(naive_max_pieces(genus2.relators).values()) == 1
    assert all(len(w) == 4 for w in torus.relators.closure)
    assert all(len(w) == 8 for w in genus2.relators.closure)
