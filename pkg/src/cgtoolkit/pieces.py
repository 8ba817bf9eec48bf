"""Piece enumeration and small-cancellation checking over a free background.

All comparisons against mu * ||R|| are exact rational arithmetic; verdicts
never touch floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InvalidSpec
from .words import SymmetrizedSet, Word, cyclic_reduce


@dataclass(frozen=True)
class CancellationParams:
    """Parameters (mu, rho) of the free-background condition; the background
    specialization epsilon=0, lambda=1, c=0 is implicit."""

    mu: Fraction
    rho: int

    def __post_init__(self):
        if not (0 < self.mu < 1):
            raise InvalidSpec(f"mu must lie in (0,1), got {self.mu}")
        if self.rho < 1:
            raise InvalidSpec(f"rho must be a positive integer, got {self.rho}")


class KDescriptor:
    """Finite description of an external word set K.

    kinds:
      - finite_list: all subwords of the given words (subword closure
        computed at construction)
      - sub_alphabet: all reduced words over a generator subset
      - cyclic_powers: all subwords of all powers w^k and their inverses
    """

    def __init__(self, kind: str, *, words: Sequence[Word] = (),
                 generators: frozenset[int] = frozenset(),
                 power_base: Optional[Word] = None):
        if kind not in ("finite_list", "sub_alphabet", "cyclic_powers"):
            raise InvalidSpec(f"unknown K descriptor kind {kind!r}")
        self.kind = kind
        self.generators = frozenset(generators)
        self.power_base = power_base
        self.subwords: frozenset[tuple[int, ...]] = frozenset()
        self.max_subword = 0
        if kind == "finite_list":
            closed: set[tuple[int, ...]] = set()
            for w in words:
                ls = w.letters
                for i in range(len(ls)):
                    for j in range(i, len(ls) + 1):
                        closed.add(ls[i:j])
            self.subwords = frozenset(closed)
            self.max_subword = max((len(s) for s in closed), default=0)
        elif kind == "cyclic_powers":
            if power_base is None or not power_base:
                raise InvalidSpec("cyclic_powers needs a nonempty base word")
            core, _ = cyclic_reduce(power_base)
            if not core:
                raise InvalidSpec("cyclic_powers base reduces to empty")
            self.core = core

    @staticmethod
    def finite_list(words: Sequence[Word]) -> "KDescriptor":
        return KDescriptor("finite_list", words=words)

    @staticmethod
    def sub_alphabet(generators: Sequence[int]) -> "KDescriptor":
        return KDescriptor("sub_alphabet", generators=frozenset(generators))

    @staticmethod
    def cyclic_powers(w: Word) -> "KDescriptor":
        return KDescriptor("cyclic_powers", power_base=w)

    def describe(self, alphabet) -> str:
        if self.kind == "sub_alphabet":
            names = sorted(alphabet.name(i) for i in self.generators)
            return f"sub_alphabet({' '.join(names) or 'empty'})"
        if self.kind == "cyclic_powers":
            return f"cyclic_powers({self.power_base.format(alphabet)})"
        return f"finite_list({len(self.subwords)} subwords)"


@dataclass(frozen=True)
class PieceWitness:
    """A replayable occurrence pair: word[offset:offset+length] is the piece;
    for relator-relator pieces, other[other_offset:...] is the second copy."""

    host: Word
    offset: int
    length: int
    other: Optional[Word] = None
    other_offset: int = 0

    def piece(self) -> Word:
        return Word(self.host.letters[self.offset : self.offset + self.length],
                    _reduced=True)

    def replays(self) -> bool:
        u = self.host.letters[self.offset : self.offset + self.length]
        if len(u) != self.length:
            return False
        if self.other is None:
            return True
        v = self.other.letters[self.other_offset : self.other_offset + self.length]
        return v == u or v == tuple(-x for x in reversed(u))


@dataclass
class RelatorReport:
    relator: Word
    max_piece: int = 0
    piece_witness: Optional[PieceWitness] = None
    max_self_piece: int = 0
    self_piece_witness: Optional[PieceWitness] = None
    max_k_pieces: list[int] = field(default_factory=list)
    k_piece_witnesses: list[Optional[PieceWitness]] = field(default_factory=list)


@dataclass
class PieceReport:
    """Per-relator maxima with witnesses, plus a pass/fail verdict per
    condition item when produced by check_condition."""

    relators: dict[Word, RelatorReport]
    item_verdicts: dict[str, bool] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.item_verdicts.values()) if self.item_verdicts else True

    def report_for(self, r: Word) -> RelatorReport:
        return self.relators[r]

    def max_piece_overall(self) -> int:
        return max((e.max_piece for e in self.relators.values()), default=0)


def _ensure_reports(rset: SymmetrizedSet) -> dict[Word, RelatorReport]:
    return {r: RelatorReport(relator=r) for r in rset.sorted_words()}


class _TrieNode:
    __slots__ = ("children", "count")

    def __init__(self):
        self.children: dict[int, _TrieNode] = {}
        self.count = 0


def enumerate_pieces(rset: SymmetrizedSet) -> PieceReport:
    """For each R in the closure: the longest U that is a prefix of R and of
    some distinct R' in the closure.  Uses a prefix trie over the closure;
    because the closure contains every rotation, this equals the longest
    common subword of two distinct cyclic words."""
    words = rset.sorted_words()
    root = _TrieNode()
    for w in words:
        node = root
        node.count += 1
        for x in w.letters:
            node = node.children.setdefault(x, _TrieNode())
            node.count += 1
    reports = _ensure_reports(rset)
    for w in words:
        node = root
        best = 0
        for depth, x in enumerate(w.letters, start=1):
            node = node.children[x]
            if node.count > 1:
                best = depth
        entry = reports[w]
        entry.max_piece = best
        if best:
            other = _find_prefix_holder(words, w, w.letters[:best])
            entry.piece_witness = PieceWitness(host=w, offset=0, length=best,
                                               other=other, other_offset=0)
    return PieceReport(relators=reports)


def _find_prefix_holder(words: list[Word], exclude: Word,
                        prefix: tuple[int, ...]) -> Word:
    for other in words:
        if other is not exclude and other.letters[: len(prefix)] == prefix:
            return other
    raise AssertionError("trie count promised a second prefix holder")


def enumerate_self_pieces(rset: SymmetrizedSet) -> PieceReport:
    """For each R: the longest prefix U such that R = U V U' V' with U' equal
    to U or U^-1 as letters and the occurrences disjoint (second occurrence
    at offset >= |U|)."""
    reports = _ensure_reports(rset)
    for w in rset.sorted_words():
        ls = w.letters
        n = len(ls)
        best = 0
        witness = None
        for length in range(1, n // 2 + 1):
            u = ls[:length]
            u_inv = tuple(-x for x in reversed(u))
            for j in range(length, n - length + 1):
                seg = ls[j : j + length]
                if seg == u or seg == u_inv:
                    best = length
                    witness = PieceWitness(host=w, offset=0, length=length,
                                           other=w, other_offset=j)
                    break
        entry = reports[w]
        entry.max_self_piece = best
        entry.self_piece_witness = witness
    return PieceReport(relators=reports)


def _longest_k_match(ls: tuple[int, ...], k: KDescriptor) -> tuple[int, int]:
    """(max length, offset) of the longest subword of ls in K's language."""
    n = len(ls)
    if k.kind == "sub_alphabet":
        best, off = 0, 0
        run_start = 0
        run = 0
        for i, x in enumerate(ls):
            if abs(x) - 1 in k.generators:
                if run == 0:
                    run_start = i
                run += 1
                if run > best:
                    best, off = run, run_start
            else:
                run = 0
        return best, off
    if k.kind == "finite_list":
        best, off = 0, 0
        for i in range(n):
            for j in range(i + best + 1, min(n, i + k.max_subword) + 1):
                if ls[i:j] in k.subwords:
                    best, off = j - i, i
        return best, off
    # cyclic_powers: longest subword of ls matching a subword of core^inf
    # or of (core^-1)^inf; match length bounded by n.
    best, off = 0, 0
    for core in (k.core, k.core.inverse()):
        reps = n // len(core) + 2
        text = core.letters * reps
        m = len(text)
        for i in range(n):
            for phase in range(len(core)):
                length = 0
                while (i + length < n and phase + length < m
                       and ls[i + length] == text[phase + length]):
                    length += 1
                if length > best:
                    best, off = length, i
    return best, off


def enumerate_k_pieces(rset: SymmetrizedSet, k: KDescriptor) -> PieceReport:
    """For each R: the longest subword of R lying in the language of K."""
    reports = _ensure_reports(rset)
    for w in rset.sorted_words():
        length, offset = _longest_k_match(w.letters, k)
        entry = reports[w]
        entry.max_k_pieces = [length]
        entry.k_piece_witnesses = [
            PieceWitness(host=w, offset=offset, length=length) if length else None
        ]
    return PieceReport(relators=reports)


# Above these sizes check_condition switches from per-rotation scans to the
# class-level engine in fastpieces (same verdict: per-relator maxima within
# one cyclic class share their maximum, and all rotations share a length).
_SMALL_TOTAL_LETTERS = 6000
_SMALL_MAX_LENGTH = 64


def _is_small(rset: SymmetrizedSet) -> bool:
    return (rset.total_letters() <= _SMALL_TOTAL_LETTERS
            and rset.max_length() <= _SMALL_MAX_LENGTH)


def _longest_cyclic_k_match(rep: Word, k: KDescriptor) -> tuple[int, int]:
    """Longest K-subword over all rotations of a cyclic word: the longest
    K-match inside the doubled word, capped at the word length."""
    n = len(rep)
    doubled = rep.letters + rep.letters[: n - 1]
    best, off = _longest_k_match(doubled, k)
    return min(best, n), off % n


def _small_reports(rset: SymmetrizedSet,
                   ks: Sequence[KDescriptor]) -> dict[Word, RelatorReport]:
    pieces = enumerate_pieces(rset)
    selfs = enumerate_self_pieces(rset)
    k_reports = [enumerate_k_pieces(rset, k) for k in ks]
    reports = _ensure_reports(rset)
    for w, entry in reports.items():
        entry.max_piece = pieces.relators[w].max_piece
        entry.piece_witness = pieces.relators[w].piece_witness
        entry.max_self_piece = selfs.relators[w].max_self_piece
        entry.self_piece_witness = selfs.relators[w].self_piece_witness
        entry.max_k_pieces = [kr.relators[w].max_k_pieces[0] for kr in k_reports]
        entry.k_piece_witnesses = [
            kr.relators[w].k_piece_witnesses[0] for kr in k_reports
        ]
    return reports


def _class_reports(rset: SymmetrizedSet, ks: Sequence[KDescriptor],
                   mu: Optional[Fraction] = None) -> dict[Word, RelatorReport]:
    """One entry per cyclic class, holding the maxima over the whole class.
    Witnesses are materialized where the maxima breach mu (always, when mu
    is None): witness extraction reruns the hashing pass, so passing classes
    skip it."""
    from . import fastpieces as fp

    indexes = fp.build_indexes(rset)
    piece_max = fp.class_piece_maxima(indexes)
    self_max = fp.class_self_piece_maxima(indexes)

    def breaches(value: int, n: int) -> bool:
        if value == 0:
            return False
        if mu is None:
            return True
        return value * mu.denominator >= mu.numerator * n

    needed = {i: piece_max[i] for i, cls in enumerate(rset.classes)
              if breaches(piece_max[i], cls.length)}
    pairs = fp.piece_witness_pairs(indexes, needed)

    reports: dict[Word, RelatorReport] = {}
    for i, cls in enumerate(rset.classes):
        entry = RelatorReport(relator=cls.rep)
        entry.max_piece = piece_max[i]
        if i in pairs:
            c, phase, oc, ophase = pairs[i]
            host = rset.classes[c].rep.rotate(phase)
            other = rset.classes[oc].rep.rotate(ophase)
            witness = PieceWitness(host=host, offset=0, length=piece_max[i],
                                   other=other, other_offset=0)
            assert witness.replays() and (
                host.letters[: piece_max[i]] == other.letters[: piece_max[i]])
            entry.piece_witness = witness
        entry.max_self_piece = self_max[i]
        if breaches(self_max[i], cls.length):
            found = fp.self_piece_witness(indexes[i], self_max[i])
            if found is not None:
                phase, off = found
                host = cls.rep.rotate(phase)
                witness = PieceWitness(host=host, offset=0,
                                       length=self_max[i],
                                       other=host, other_offset=off)
                assert witness.replays()
                entry.self_piece_witness = witness
        for k in ks:
            length, offset = _longest_cyclic_k_match(cls.rep, k)
            entry.max_k_pieces.append(length)
            entry.k_piece_witnesses.append(
                PieceWitness(host=cls.rep.rotate(offset), offset=0,
                             length=length) if length else None)
        reports[cls.rep] = entry
    return reports


def check_condition(rset: SymmetrizedSet, p: CancellationParams,
                    ks: Sequence[KDescriptor] = ()) -> PieceReport:
    """Free-background small-cancellation condition:
      (i)   every closure word has length >= rho
      (ii)  quasigeodesity: vacuously true for reduced words over a free group
      (iii) every relator-relator piece has length < mu * ||R||
      (iv)  every K-piece, per descriptor, has length < mu * ||R||
      (v)   every self-piece has length < mu * ||R||

    On small closures the report carries one entry per closure word; on large
    ones, one entry per cyclic class (the class maximum, which decides the
    same verdict).
    """
    if _is_small(rset):
        reports = _small_reports(rset, ks)
    else:
        reports = _class_reports(rset, ks, p.mu)

    verdicts = {"length": True, "quasigeodesic": True, "pieces": True,
                "k_pieces": True, "self_pieces": True}
    failures: list[str] = []
    mu = p.mu
    for w, entry in reports.items():
        n = len(w)
        if n < p.rho:
            verdicts["length"] = False
            failures.append(f"relator of length {n} < rho = {p.rho}")
        if entry.max_piece * mu.denominator >= mu.numerator * n:
            verdicts["pieces"] = False
            failures.append(
                f"piece of length {entry.max_piece} >= mu*{n} = {mu * n}"
            )
        for i, mk in enumerate(entry.max_k_pieces):
            if mk * mu.denominator >= mu.numerator * n:
                verdicts["k_pieces"] = False
                failures.append(
                    f"K-piece (descriptor {i}) of length {mk} >= mu*{n} = {mu * n}"
                )
        if entry.max_self_piece * mu.denominator >= mu.numerator * n:
            verdicts["self_pieces"] = False
            failures.append(
                f"self-piece of length {entry.max_self_piece} >= mu*{n} = {mu * n}"
            )
    return PieceReport(relators=reports, item_verdicts=verdicts,
                       failures=failures)


def metric_condition(rset: SymmetrizedSet, lam: Fraction) -> bool:
    """Classical C'(lambda): every piece U of every R has ||U|| < lambda*||R||."""
    if not (0 < lam <= 1):
        raise InvalidSpec(f"lambda must lie in (0,1], got {lam}")
    if _is_small(rset):
        maxima = [(len(w), e.max_piece)
                  for w, e in enumerate_pieces(rset).relators.items()]
    else:
        from . import fastpieces as fp
        indexes = fp.build_indexes(rset)
        maxima = list(zip((c.length for c in rset.classes),
                          fp.class_piece_maxima(indexes)))
    for n, piece in maxima:
        if piece * lam.denominator >= lam.numerator * n:
            return False
    return True
