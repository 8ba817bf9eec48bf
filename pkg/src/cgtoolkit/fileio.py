"""Parsers for the text file formats shared by the CLI.

Presentation files:
    gens: a b c d
    rel: a b a^-1 b^-1

Group files:
    deg: 4
    gen: (0 1 2 3)
    gen: (0 1)

HNN files extend presentation files:
    stable: s t
    assoc: s | x -> y
"""

from __future__ import annotations

from .errors import ParseError
from .dehn import Presentation
from .hnn import HnnPresentation, build_hnn
from .perms import PermGroup, Permutation
from .words import Alphabet, Word, symmetrize


def _lines(text: str) -> list[tuple[str, str]]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'key: value', got {line!r}")
        out.append((key.strip(), value.strip()))
    return out


def parse_presentation(text: str) -> Presentation:
    gens: list[str] | None = None
    rel_texts: list[str] = []
    for key, value in _lines(text):
        if key == "gens":
            gens = value.split()
        elif key == "rel":
            rel_texts.append(value)
        elif key in ("stable", "assoc"):
            raise ParseError(f"{key!r} line in a plain presentation file")
        else:
            raise ParseError(f"unknown key {key!r}")
    if gens is None:
        raise ParseError("missing 'gens:' line")
    alphabet = Alphabet(gens)
    seeds = [Word.parse(t, alphabet) for t in rel_texts]
    return Presentation(alphabet, symmetrize(seeds, alphabet))


def parse_hnn(text: str) -> HnnPresentation:
    gens: list[str] | None = None
    rel_texts: list[str] = []
    stable: list[str] = []
    assoc_lines: list[tuple[str, str, str]] = []
    for key, value in _lines(text):
        if key == "gens":
            gens = value.split()
        elif key == "rel":
            rel_texts.append(value)
        elif key == "stable":
            stable.extend(value.split())
        elif key == "assoc":
            head, sep, rest = value.partition("|")
            if not sep:
                raise ParseError(f"assoc line needs 'letter | g -> w': {value!r}")
            g_text, arrow, w_text = rest.partition("->")
            if not arrow:
                raise ParseError(f"assoc line needs '->': {value!r}")
            assoc_lines.append((head.strip(), g_text.strip(), w_text.strip()))
        else:
            raise ParseError(f"unknown key {key!r}")
    if gens is None:
        raise ParseError("missing 'gens:' line")
    alphabet = Alphabet(gens)
    seeds = [Word.parse(t, alphabet) for t in rel_texts]
    base = Presentation(alphabet, symmetrize(seeds, alphabet))
    pairs = []
    declared = set(stable)
    for letter, g_text, w_text in assoc_lines:
        if letter not in declared:
            raise ParseError(f"assoc letter {letter!r} not declared stable")
        pairs.append((Word.parse(g_text, alphabet),
                      Word.parse(w_text, alphabet), letter))
    hp = build_hnn(base, pairs)
    # keep declared-but-unassociated letters available in the alphabet
    extra = [s for s in stable if s not in {p[2] for p in pairs}]
    if extra:
        hp = HnnPresentation(base, [p[2] for p in pairs] + extra,
                             hp.associations)
    return hp


def parse_group(text: str) -> PermGroup:
    degree: int | None = None
    gens: list[Permutation] = []
    for key, value in _lines(text):
        if key == "deg":
            degree = int(value)
        elif key == "gen":
            if degree is None:
                raise ParseError("'deg:' must come before 'gen:' lines")
            gens.append(Permutation.parse(value, degree))
        else:
            raise ParseError(f"unknown key {key!r}")
    if degree is None:
        raise ParseError("missing 'deg:' line")
    return PermGroup(degree, gens)
