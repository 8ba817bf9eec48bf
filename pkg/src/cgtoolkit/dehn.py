"""Dehn's algorithm for classical C'(1/6) presentations.

Each replacement step swaps an over-half relator subword for the inverse of
its complement, so the word length strictly decreases and the loop
terminates.  Under C'(1/6) a Dehn-irreducible nonempty residual is certified
nontrivial (Greendlinger completeness); otherwise the verdict is Unknown.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import UnknownGenerator
from .pieces import metric_condition
from .words import Alphabet, SymmetrizedSet, Word


class Presentation:
    """A finite presentation with symmetrized relators."""

    def __init__(self, alphabet: Alphabet, relators: SymmetrizedSet):
        if relators.alphabet != alphabet:
            raise ValueError("relator set alphabet mismatch")
        self.alphabet = alphabet
        self.relators = relators
        self.c16_certified = metric_condition(relators, Fraction(1, 6))


@dataclass(frozen=True)
class DehnStep:
    position: int
    replaced: Word          # U, the over-half subword
    relator: Word           # R in the closure with R = U * V
    complement: Word        # V


@dataclass(frozen=True)
class CertificateEntry:
    conjugator: Word
    relator: Word


@dataclass
class DehnTrace:
    steps: list[DehnStep] = field(default_factory=list)
    certificate: list[CertificateEntry] = field(default_factory=list)


def replay_certificate(w: Word, trace: DehnTrace) -> Word:
    """Peel the recorded conjugated relators off w: the result equals the
    residual the reducer produced.  For a Trivial verdict it is empty."""
    acc = w
    for entry in trace.certificate:
        conj = entry.relator.conjugate(entry.conjugator.inverse())
        acc = conj.inverse() * acc
    return acc


@dataclass(frozen=True)
class DehnVerdict:
    kind: str  # "trivial" | "nontrivial_certified" | "unknown"
    residual: Word
    trace: DehnTrace


def _check_alphabet(p: Presentation, w: Word) -> None:
    if w.max_index() > len(p.alphabet):
        raise UnknownGenerator("word uses a generator outside the presentation")


def _find_replacement(p: Presentation,
                      w: Word) -> Optional[tuple[int, Word, Word]]:
    """Leftmost position, then longest U, then lexicographically least
    relator, among subwords U of w with 2*||U|| > ||R|| for some closure
    relator R having U as a prefix."""
    ls = w.letters
    n = len(ls)
    relators = p.relators.sorted_words()
    for pos in range(n):
        best: Optional[tuple[int, Word]] = None
        for r in relators:
            rl = r.letters
            half = len(rl) // 2  # need length > half (strict over-half)
            max_len = min(len(rl), n - pos)
            if max_len <= half:
                continue
            # longest match of r's prefix at pos
            length = 0
            while length < max_len and ls[pos + length] == rl[length]:
                length += 1
            if 2 * length > len(rl):
                if best is None or length > best[0]:
                    best = (length, r)
        if best is not None:
            return pos, Word(ls[pos : pos + best[0]], _reduced=True), best[1]
    return None


def dehn_reduce(p: Presentation, w: Word) -> tuple[Word, DehnTrace]:
    """Run Dehn's algorithm to a fixed point, recording steps and a
    replayable triviality certificate."""
    _check_alphabet(p, w)
    trace = DehnTrace()
    current = w
    while True:
        found = _find_replacement(p, current)
        if found is None:
            return current, trace
        pos, u, r = found
        v = Word(r.letters[len(u):], _reduced=True)
        prefix = Word(current.letters[:pos], _reduced=True)
        suffix = Word(current.letters[pos + len(u):], _reduced=True)
        trace.steps.append(DehnStep(position=pos, replaced=u, relator=r,
                                    complement=v))
        # current = (prefix * R * prefix^-1) * (prefix * V^-1 * suffix)
        trace.certificate.append(
            CertificateEntry(conjugator=prefix, relator=r))
        current = prefix * v.inverse() * suffix


def decide(p: Presentation, w: Word) -> DehnVerdict:
    residual, trace = dehn_reduce(p, w)
    if not residual:
        return DehnVerdict(kind="trivial", residual=residual, trace=trace)
    if p.c16_certified:
        return DehnVerdict(kind="nontrivial_certified", residual=residual,
                           trace=trace)
    return DehnVerdict(kind="unknown", residual=residual, trace=trace)


def exponent_vector(w: Word, n_gens: int) -> list[int]:
    vec = [0] * n_gens
    for x in w:
        vec[abs(x) - 1] += 1 if x > 0 else -1
    return vec


def _row_hermite(rows: list[list[int]]) -> list[list[int]]:
    """Integer row echelon form via gcd elimination.  Returns the nonzero
    pivot rows; the row space over Z is preserved."""
    rows = [r[:] for r in rows if any(r)]
    if not rows:
        return []
    n = len(rows[0])
    result: list[list[int]] = []
    for col in range(n):
        while True:
            nonzero = [r for r in rows if r[col] != 0]
            if len(nonzero) <= 1:
                break
            nonzero.sort(key=lambda r: abs(r[col]))
            p = nonzero[0]
            for r in nonzero[1:]:
                q = r[col] // p[col]
                for j in range(n):
                    r[j] -= q * p[j]
        nonzero = [r for r in rows if r[col] != 0]
        if nonzero:
            piv = nonzero[0]
            rows.remove(piv)
            if piv[col] < 0:
                piv = [-x for x in piv]
            result.append(piv)
        rows = [r for r in rows if any(r)]
    return result


def lattice_member(vec: list[int], basis_rows: list[list[int]]) -> bool:
    """Is vec an integer combination of the basis rows?"""
    hnf = _row_hermite(basis_rows)
    v = vec[:]
    n = len(v)
    for row in hnf:
        col = next(j for j in range(n) if row[j] != 0)
        if v[col] % row[col] == 0:
            q = v[col] // row[col]
            for j in range(n):
                v[j] -= q * row[j]
        # otherwise leave for the final zero check to fail
    return all(x == 0 for x in v)


def abelianization_vector(p: Presentation, w: Word) -> tuple[list[int], bool]:
    """w's exponent-sum vector and whether it lies in the integer lattice
    spanned by the relators' exponent vectors.  A vector outside the lattice
    certifies w nontrivial."""
    _check_alphabet(p, w)
    n = len(p.alphabet)
    vec = exponent_vector(w, n)
    basis = [exponent_vector(r, n) for r in p.relators.seeds]
    return vec, lattice_member(vec, basis)
