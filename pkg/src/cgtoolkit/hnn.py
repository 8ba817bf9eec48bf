"""HNN presentations over a free base with cyclic associated subgroups:
construction, Britton pinch reduction, involution extension, the free-base
hexagon check, and conjugacy prechecks on the edge groups.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import (BaseNotFree, EmptyAssociation, IncompatibleAssociations,
                     LetterClash, NotInvolution, SupportViolation)
from .dehn import Presentation
from .words import (Alphabet, Word, WordMap, conjugacy_equal, cyclic_reduce)


@dataclass(frozen=True)
class Association:
    """letter^-1 * g * letter = w, i.e. the stable letter conjugates the
    cyclic subgroup <g> onto <w>."""

    g: Word
    w: Word
    letter: str


class HnnPresentation:
    def __init__(self, base: Presentation, stable_letters: Sequence[str],
                 associations: Sequence[Association]):
        self.base = base
        self.stable_letters = list(stable_letters)
        self.associations = list(associations)
        self.alphabet = base.alphabet.extend(self.stable_letters)
        self.base_rank = len(base.alphabet)
        self._assoc_by_letter = {a.letter: a for a in self.associations}

    def is_stable_index(self, idx: int) -> bool:
        """idx is 0-based over the combined alphabet."""
        return idx >= self.base_rank

    def assoc_for(self, letter_idx: int) -> Optional[Association]:
        name = self.alphabet.name(letter_idx)
        return self._assoc_by_letter.get(name)

    def relator_words(self) -> list[Word]:
        """The induced finite presentation's relators:
        letter^-1 * g * letter * w^-1, over the combined alphabet."""
        out = []
        for a in self.associations:
            s = Word.generator(self.alphabet.index(a.letter))
            out.append(s.inverse() * a.g * s * a.w.inverse())
        return out


def build_hnn(base: Presentation,
              pairs: Sequence[tuple[Word, Word, str]]) -> HnnPresentation:
    letters = [letter for _, _, letter in pairs]
    if len(set(letters)) != len(letters):
        raise LetterClash(f"duplicate stable letters in {letters}")
    for letter in letters:
        if letter in base.alphabet:
            raise LetterClash(f"stable letter {letter!r} already a base generator")
    associations = []
    for g, w, letter in pairs:
        g_core, _ = cyclic_reduce(g)
        w_core, _ = cyclic_reduce(w)
        if not g_core or not w_core:
            raise EmptyAssociation(
                f"association for {letter!r} has an empty side")
        associations.append(Association(g=g, w=w, letter=letter))
    return HnnPresentation(base, letters, associations)


def power_in_cyclic(u: Word, g: Word) -> Optional[int]:
    """If u = g^k in the free group, return k; otherwise None.
    With g = p * core * p^-1 the candidates are u = p * core^k * p^-1 for
    |k| <= ||u||, so the search is bounded."""
    if not u:
        return 0
    if not g:
        return None
    core, _ = cyclic_reduce(g)
    bound = len(u) // len(core) + 1
    for k in range(1, bound + 1):
        if g ** k == u:
            return k
        if g ** (-k) == u:
            return -k
    return None


def _require_free_base(h: HnnPresentation) -> None:
    if h.base.relators.seeds:
        raise BaseNotFree("Britton reduction requires an empty base relator set")


def britton_reduce(h: HnnPresentation, w: Word) -> Word:
    """Remove Britton pinches until none remain, leftmost innermost first.

    A pinch is letter^-1 * u * letter with u in <g> (rewritten to the
    matching power of w) or letter * u * letter^-1 with u in <w> (rewritten
    to the power of g), with u a base word.
    """
    _require_free_base(h)
    current = w
    while True:
        rewrite = _find_pinch(h, current)
        if rewrite is None:
            return current
        i, j, replacement = rewrite
        current = Word(current.letters[:i] + replacement.letters
                       + current.letters[j + 1:])


def _find_pinch(h: HnnPresentation,
                w: Word) -> Optional[tuple[int, int, Word]]:
    """Scan left to right; the first stable letter that closes against the
    previous stable letter is the leftmost innermost candidate.  Returns
    (start index, end index, replacement word) or None."""
    ls = w.letters
    prev: Optional[int] = None  # index of previous stable letter
    for j, x in enumerate(ls):
        idx = abs(x) - 1
        if not h.is_stable_index(idx):
            continue
        if prev is not None:
            y = ls[prev]
            if abs(y) == abs(x) and y == -x:
                assoc = h.assoc_for(idx)
                if assoc is not None:
                    u = Word(ls[prev + 1 : j], _reduced=True)
                    if y < 0:  # letter^-1 * u * letter
                        k = power_in_cyclic(u, assoc.g)
                        if k is not None:
                            return prev, j, assoc.w ** k
                    else:      # letter * u * letter^-1
                        k = power_in_cyclic(u, assoc.w)
                        if k is not None:
                            return prev, j, assoc.g ** k
        prev = j
    return None


def stable_letter_count(h: HnnPresentation, w: Word) -> int:
    return sum(1 for x in w if h.is_stable_index(abs(x) - 1))


def extend_involution(h: HnnPresentation, phi: WordMap,
                      swaps: Sequence[tuple[str, str]]) -> WordMap:
    """Extend a base involution over the stable letters and verify both the
    involution law and compatibility with the associations."""
    if not phi.involution:
        raise NotInvolution("base map is not involution-flagged")
    full = h.alphabet
    images: list[Word] = []
    for i in range(h.base_rank):
        img = phi.images[i]
        images.append(Word(img.letters, _reduced=True))
    swap_map = {}
    for a, b in swaps:
        swap_map[a] = b
        swap_map[b] = a
    for name in h.stable_letters:
        target = swap_map.get(name, name)
        if target not in full:
            raise NotInvolution(f"swap target {target!r} is not a generator")
        images.append(Word.generator(full.index(target)))
    try:
        extended = WordMap(full, tuple(images), involution=True)
    except ValueError as exc:
        raise NotInvolution(str(exc)) from None
    # compatibility: for (g, w, s) with phi(s) = t there must be an
    # association (phi(g), phi(w), t)
    for assoc in h.associations:
        partner_letter = swap_map.get(assoc.letter, assoc.letter)
        partner = h._assoc_by_letter.get(partner_letter)
        if partner is None:
            raise IncompatibleAssociations(
                f"no association on partner letter {partner_letter!r}")
        if phi(assoc.g) != partner.g or phi(assoc.w) != partner.w:
            raise IncompatibleAssociations(
                f"phi does not carry the association on {assoc.letter!r} "
                f"to the one on {partner_letter!r}")
    return extended


@dataclass(frozen=True)
class HexagonVerdict:
    holds: bool
    witness: Optional[tuple[Word, Word]] = None  # (xi, phi(xi_prime))


def hexagon_check_free(xi: Word, xi_prime: Word, phi: WordMap,
                       x_sub: frozenset[int]) -> HexagonVerdict:
    """Free-group base case of the hexagon property: a solution to
    xi^z = phi((xi')^z) forces conjugacy of xi and phi(xi'), so the property
    can only fail when they are conjugate yet xi' != xi^{+-1}."""
    for w, label in ((xi, "xi"), (xi_prime, "xi'")):
        if not w.generators() <= x_sub:
            raise SupportViolation(f"{label} uses letters outside the subgroup")
    phi_xi_prime = phi(xi_prime)
    if not conjugacy_equal(xi, phi_xi_prime):
        return HexagonVerdict(holds=True)
    if xi_prime == xi or xi_prime == xi.inverse():
        return HexagonVerdict(holds=True)
    return HexagonVerdict(holds=False, witness=(xi, phi_xi_prime))


@dataclass(frozen=True)
class PairCheck:
    left: Word      # generator of the X-side cyclic group
    right: Word     # generator of the compared edge group
    conjugate_powers_exist: bool
    witness: Optional[tuple[Word, Word]] = None  # conjugate nontrivial powers


@dataclass
class AcylindricityReport:
    pairs: list[PairCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not any(p.conjugate_powers_exist for p in self.pairs)


def primitive_root(w: Word) -> tuple[Word, int]:
    """(p, k) with the cyclically reduced core of w equal to p^k as letters
    and p not a proper power."""
    core, _ = cyclic_reduce(w)
    n = len(core)
    if n == 0:
        return core, 1
    for period in range(1, n + 1):
        if n % period:
            continue
        p = Word(core.letters[:period], _reduced=True)
        if (p ** (n // period)) == core:
            return p, n // period
    raise AssertionError("unreachable: full length always a period")


def conjugate_powers_exist(u: Word, v: Word) -> Optional[tuple[Word, Word]]:
    """Nontrivial powers u^m ~ v^n conjugate in the free group exist iff the
    primitive roots of their cores are rotations of each other, up to
    inverse.  Returns witness powers or None."""
    if not u or not v:
        return None
    pu, a = primitive_root(u)
    pv, b = primitive_root(v)
    if len(pu) != len(pv):
        return None
    import math
    g = math.gcd(a, b)
    m, n = b // g, a // g
    if conjugacy_equal(pu, pv):
        return u ** m, v ** n
    if conjugacy_equal(pu, pv.inverse()):
        return u ** m, v ** (-n)
    return None


def acylindricity_precheck_free(h: HnnPresentation) -> AcylindricityReport:
    """For each target-side edge group <w> against every other edge group,
    report whether conjugate nontrivial powers exist in the free base (a
    necessary obstruction to the 2-acylindricity condition)."""
    _require_free_base(h)
    targets = [("w", i, a.w) for i, a in enumerate(h.associations)]
    all_edges = [("g", i, a.g) for i, a in enumerate(h.associations)] + targets
    report = AcylindricityReport()
    for t_side, t_i, t_word in targets:
        for e_side, e_i, e_word in all_edges:
            if (t_side, t_i) == (e_side, e_i):
                continue
            witness = conjugate_powers_exist(t_word, e_word)
            report.pairs.append(PairCheck(
                left=t_word, right=e_word,
                conjugate_powers_exist=witness is not None,
                witness=witness))
    return report
