"""Unified command-line front end.

Exit codes: 0 for pass/true verdicts, 1 for fail/false verdicts (the report
then carries a replayable witness), 2 for usage or parse errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import fileio
from .errors import ToolkitError
from .dehn import abelianization_vector, decide, dehn_reduce
from .families import FamilySpec, certify_family, generate_family
from .hnn import britton_reduce, hexagon_check_free
from .invgen import (ig_by_actions, ig_by_bruteforce, ig_by_subgroups,
                     class_representatives, min_ig_size)
from .perms import Permutation, conjugacy_classes, subgroup_lattice
from .pieces import (CancellationParams, KDescriptor, PieceReport,
                     check_condition, enumerate_pieces, enumerate_self_pieces,
                     metric_condition)
from .words import Word, WordMap, XY


def _fraction(text: str) -> Fraction:
    num, sep, den = text.partition("/")
    try:
        return Fraction(int(num), int(den)) if sep else Fraction(int(num))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected p/q, got {text!r}")


def _digest(parts: Sequence[str]) -> str:
    h = hashlib.sha256()
    for p in parts:
        h.update(p.encode())
        h.update(b"\0")
    return h.hexdigest()[:16]


class Report:
    def __init__(self, command: str, inputs: Sequence[str]):
        self.data = {
            "command": command,
            "inputs_digest": _digest(inputs),
            "verdicts": {},
            "witnesses": [],
        }
        self._start = time.monotonic()
        self.lines: list[str] = []

    def verdict(self, name: str, value) -> None:
        self.data["verdicts"][name] = value

    def witness(self, item) -> None:
        self.data["witnesses"].append(item)

    def line(self, text: str) -> None:
        self.lines.append(text)

    def emit(self, as_json: bool) -> None:
        if as_json:
            self.data["wall_time_s"] = round(time.monotonic() - self._start, 6)
            print(json.dumps(self.data, indent=2, sort_keys=True))
        else:
            for line in self.lines:
                print(line)


def _witness_json(w, alphabet) -> dict:
    out = {"host": w.host.format(alphabet), "offset": w.offset,
           "length": w.length, "piece": w.piece().format(alphabet)}
    if w.other is not None:
        out["other"] = w.other.format(alphabet)
        out["other_offset"] = w.other_offset
    return out


def _piece_report_lines(report: PieceReport, alphabet, rep: Report) -> None:
    rep.line(f"{'relator':<30} {'len':>4} {'piece':>6} {'self':>5} k-pieces")
    for w in sorted(report.relators, key=lambda x: x.letters):
        entry = report.relators[w]
        ks = ",".join(map(str, entry.max_k_pieces)) or "-"
        rep.line(f"{w.format(alphabet):<30} {len(w):>4} {entry.max_piece:>6} "
                 f"{entry.max_self_piece:>5} {ks}")
        item = {"relator": w.format(alphabet), "length": len(w),
                "maxPiece": entry.max_piece,
                "maxSelfPiece": entry.max_self_piece,
                "maxKPiece": entry.max_k_pieces}
        if entry.piece_witness:
            item["pieceWitness"] = _witness_json(entry.piece_witness, alphabet)
        if entry.self_piece_witness:
            item["selfPieceWitness"] = _witness_json(entry.self_piece_witness,
                                                     alphabet)
        rep.witness(item)


def cmd_sc_pieces(args) -> int:
    pres = fileio.parse_presentation(Path(args.file).read_text())
    rep = Report("sc pieces", [Path(args.file).read_text()])
    pieces = enumerate_pieces(pres.relators)
    selfs = enumerate_self_pieces(pres.relators)
    for w, entry in pieces.relators.items():
        entry.max_self_piece = selfs.relators[w].max_self_piece
        entry.self_piece_witness = selfs.relators[w].self_piece_witness
    _piece_report_lines(pieces, pres.alphabet, rep)
    rep.verdict("maxPiece", pieces.max_piece_overall())
    rep.emit(args.json)
    return 0


def _k_descriptors(args, alphabet) -> list[KDescriptor]:
    ks: list[KDescriptor] = []
    for spec in args.k_subalpha or []:
        indices = [alphabet.index(name) for name in spec.split()]
        ks.append(KDescriptor.sub_alphabet(indices))
    for spec in args.k_power or []:
        ks.append(KDescriptor.cyclic_powers(Word.parse(spec, alphabet)))
    for spec in args.k_list or []:
        words = [Word.parse(t, alphabet) for t in spec.split(";") if t.strip()]
        ks.append(KDescriptor.finite_list(words))
    return ks


def cmd_sc_check(args) -> int:
    pres = fileio.parse_presentation(Path(args.file).read_text())
    rep = Report("sc check", [Path(args.file).read_text(), str(args.mu),
                              str(args.rho)])
    params = CancellationParams(mu=args.mu, rho=args.rho)
    ks = _k_descriptors(args, pres.alphabet)
    result = check_condition(pres.relators, params, ks)
    _piece_report_lines(result, pres.alphabet, rep)
    for item, ok in result.item_verdicts.items():
        rep.verdict(item, ok)
        rep.line(f"item {item}: {'pass' if ok else 'FAIL'}")
    rep.verdict("pass", result.passed)
    for failure in result.failures:
        rep.line(f"violation: {failure}")
    rep.line(f"verdict: {'pass' if result.passed else 'fail'}")
    rep.emit(args.json)
    return 0 if result.passed else 1


def cmd_sc_family(args) -> int:
    spec = FamilySpec(m=args.m, mu_prime=args.mu, rho_prime=args.rho)
    words = generate_family(spec)
    rep = Report("sc family", [str(args.m), str(args.mu), str(args.rho)])
    text = "\n".join(w.format(XY) for w in words)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        for w in words:
            rep.line(w.format(XY))
    rep.verdict("N", spec.block_exponent)
    rep.verdict("count", len(words))
    code = 0
    if args.certify:
        result = certify_family(spec)
        rep.verdict("certified", result.passed)
        rep.line(f"certification: {'pass' if result.passed else 'fail'}")
        code = 0 if result.passed else 1
    rep.emit(args.json)
    return code


def cmd_dehn_reduce(args) -> int:
    pres = fileio.parse_presentation(Path(args.file).read_text())
    w = Word.parse(args.word, pres.alphabet)
    residual, trace = dehn_reduce(pres, w)
    rep = Report("dehn reduce", [Path(args.file).read_text(), args.word])
    rep.verdict("residual", residual.format(pres.alphabet))
    rep.verdict("steps", len(trace.steps))
    rep.line(f"residual: {residual.format(pres.alphabet)}")
    rep.line(f"steps: {len(trace.steps)}")
    rep.emit(args.json)
    return 0


def cmd_dehn_decide(args) -> int:
    pres = fileio.parse_presentation(Path(args.file).read_text())
    w = Word.parse(args.word, pres.alphabet)
    verdict = decide(pres, w)
    vec, member = abelianization_vector(pres, w)
    rep = Report("dehn decide", [Path(args.file).read_text(), args.word])
    rep.verdict("kind", verdict.kind)
    rep.verdict("c16Certified", pres.c16_certified)
    rep.verdict("abelianization", vec)
    rep.verdict("abelianizationMember", member)
    if verdict.kind != "trivial":
        rep.witness({"residual": verdict.residual.format(pres.alphabet)})
    rep.line(f"verdict: {verdict.kind}")
    rep.line(f"residual: {verdict.residual.format(pres.alphabet)}")
    rep.emit(args.json)
    return 0 if verdict.kind == "trivial" else 1


def cmd_hnn_build(args) -> int:
    hp = fileio.parse_hnn(Path(args.file).read_text())
    rep = Report("hnn build", [Path(args.file).read_text()])
    rep.verdict("stableLetters", hp.stable_letters)
    rels = [r.format(hp.alphabet) for r in hp.relator_words()]
    rep.verdict("inducedRelators", rels)
    rep.line(f"gens: {' '.join(hp.alphabet.names)}")
    for r in rels:
        rep.line(f"rel: {r}")
    rep.emit(args.json)
    return 0


def cmd_hnn_reduce(args) -> int:
    hp = fileio.parse_hnn(Path(args.file).read_text())
    w = Word.parse(args.word, hp.alphabet)
    reduced = britton_reduce(hp, w)
    rep = Report("hnn reduce", [Path(args.file).read_text(), args.word])
    rep.verdict("reduced", reduced.format(hp.alphabet))
    rep.line(reduced.format(hp.alphabet))
    rep.emit(args.json)
    return 0


def cmd_hnn_hexagon(args) -> int:
    hp = fileio.parse_hnn(Path(args.file).read_text())
    alphabet = hp.base.alphabet
    pairs = {}
    for chunk in args.phi.split(","):
        a, sep, b = chunk.partition("=")
        if not sep:
            raise ToolkitError(f"phi entries look like x=y, got {chunk!r}")
        pairs[a.strip()] = b.strip()
        pairs[b.strip()] = a.strip()
    phi = WordMap.from_pairs(alphabet, pairs, involution=True)
    sub = frozenset(alphabet.index(n) for n in args.sub.split())
    xi = Word.parse(args.xi, alphabet)
    xi_prime = Word.parse(args.xi_prime, alphabet)
    verdict = hexagon_check_free(xi, xi_prime, phi, sub)
    rep = Report("hnn hexagon", [args.xi, args.xi_prime, args.phi, args.sub])
    rep.verdict("holds", verdict.holds)
    if verdict.witness:
        rep.witness({"xi": verdict.witness[0].format(alphabet),
                     "phiXiPrime": verdict.witness[1].format(alphabet)})
    rep.line("HexagonHolds" if verdict.holds else "HexagonViolated")
    rep.emit(args.json)
    return 0 if verdict.holds else 1


def cmd_group_lattice(args) -> int:
    g = fileio.parse_group(Path(args.file).read_text())
    rep = Report("group lattice", [Path(args.file).read_text()])
    lattice = subgroup_lattice(g)
    rep.verdict("order", g.order)
    rep.verdict("subgroups", len(lattice))
    rep.line(f"group order {g.order}, {len(lattice)} subgroups")
    for h in lattice:
        flags = []
        if h.normal:
            flags.append("normal")
        if h.maximal:
            flags.append("maximal")
        rep.line(f"  order {h.order:>4} {' '.join(flags)}")
        rep.witness({"order": h.order, "normal": h.normal,
                     "maximal": h.maximal,
                     "elements": sorted(h.mask)})
    rep.emit(args.json)
    return 0


def cmd_group_classes(args) -> int:
    g = fileio.parse_group(Path(args.file).read_text())
    rep = Report("group classes", [Path(args.file).read_text()])
    classes = conjugacy_classes(g)
    rep.verdict("order", g.order)
    rep.verdict("classSizes", sorted(classes.class_sizes))
    rep.line(f"group order {g.order}, {len(classes.class_sizes)} classes")
    for rep_idx, size in zip(classes.representatives, classes.class_sizes):
        rep.line(f"  rep {g.elements[rep_idx]!r} size {size}")
        rep.witness({"representative": repr(g.elements[rep_idx]),
                     "size": size})
    rep.emit(args.json)
    return 0


def _parse_elements(text: str, g) -> list[Permutation]:
    return [Permutation.parse(chunk.strip(), g.degree)
            for chunk in text.split(";") if chunk.strip()]


def cmd_ig_check(args) -> int:
    g = fileio.parse_group(Path(args.file).read_text())
    s = _parse_elements(args.set, g)
    verdict = ig_by_subgroups(g, s)
    rep = Report("ig check", [Path(args.file).read_text(), args.set])
    rep.verdict("invariablyGenerates", verdict.invariably_generates)
    if verdict.witness_subgroup is not None:
        rep.witness({"kind": verdict.witness_kind,
                     "subgroupOrder": verdict.witness_subgroup.order,
                     "subgroupElements": sorted(verdict.witness_subgroup.mask)})
    rep.line("invariably generates"
             if verdict.invariably_generates
             else f"does not invariably generate "
                  f"(witness subgroup of order "
                  f"{verdict.witness_subgroup.order})")
    rep.emit(args.json)
    return 0 if verdict.invariably_generates else 1


def cmd_ig_min(args) -> int:
    g = fileio.parse_group(Path(args.file).read_text())
    rep = Report("ig min", [Path(args.file).read_text(), str(args.bound)])
    found = min_ig_size(g, bound=args.bound)
    if found is None:
        rep.verdict("found", False)
        rep.line(f"no invariably generating set of size <= {args.bound}")
        rep.emit(args.json)
        return 1
    size, witness = found
    rep.verdict("found", True)
    rep.verdict("size", size)
    rep.verdict("set", [repr(x) for x in witness])
    rep.line(f"minimum size {size}: {'; '.join(repr(x) for x in witness)}")
    rep.emit(args.json)
    return 0


def cmd_ig_equiv(args) -> int:
    import itertools
    g = fileio.parse_group(Path(args.file).read_text())
    rep = Report("ig equiv", [Path(args.file).read_text()])
    reps = class_representatives(g)
    disagreements = 0
    checked = 0
    for size in (1, 2):
        for combo in itertools.combinations(reps, size):
            s = list(combo)
            verdicts = {ig_by_subgroups(g, s).invariably_generates,
                        ig_by_bruteforce(g, s).invariably_generates,
                        ig_by_actions(g, s).invariably_generates}
            checked += 1
            if len(verdicts) != 1:
                disagreements += 1
                rep.witness({"set": [repr(x) for x in s]})
    rep.verdict("checked", checked)
    rep.verdict("disagreements", disagreements)
    rep.line(f"{checked} subsets checked, {disagreements} disagreements")
    rep.emit(args.json)
    return 0 if disagreements == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cgt",
                                     description="combinatorial group theory toolkit")
    top = parser.add_subparsers(dest="tool", required=True)

    def add_json(p):
        p.add_argument("--json", action="store_true",
                       help="machine-readable JSON report")

    sc = top.add_parser("sc", help="small cancellation analysis")
    sc_sub = sc.add_subparsers(dest="sub", required=True)
    p = sc_sub.add_parser("pieces")
    p.add_argument("file")
    add_json(p)
    p.set_defaults(func=cmd_sc_pieces)
    p = sc_sub.add_parser("check")
    p.add_argument("file")
    p.add_argument("--mu", type=_fraction, required=True)
    p.add_argument("--rho", type=int, required=True)
    p.add_argument("--k-subalpha", action="append")
    p.add_argument("--k-power", action="append")
    p.add_argument("--k-list", action="append")
    add_json(p)
    p.set_defaults(func=cmd_sc_check)
    p = sc_sub.add_parser("family")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--mu", type=_fraction, required=True)
    p.add_argument("--rho", type=int, required=True)
    p.add_argument("--certify", action="store_true")
    p.add_argument("--out")
    add_json(p)
    p.set_defaults(func=cmd_sc_family)

    dn = top.add_parser("dehn", help="Dehn's algorithm")
    dn_sub = dn.add_subparsers(dest="sub", required=True)
    p = dn_sub.add_parser("reduce")
    p.add_argument("file")
    p.add_argument("word")
    add_json(p)
    p.set_defaults(func=cmd_dehn_reduce)
    p = dn_sub.add_parser("decide")
    p.add_argument("file")
    p.add_argument("word")
    add_json(p)
    p.set_defaults(func=cmd_dehn_decide)

    hn = top.add_parser("hnn", help="HNN extensions and Britton reduction")
    hn_sub = hn.add_subparsers(dest="sub", required=True)
    p = hn_sub.add_parser("build")
    p.add_argument("file")
    add_json(p)
    p.set_defaults(func=cmd_hnn_build)
    p = hn_sub.add_parser("reduce")
    p.add_argument("file")
    p.add_argument("word")
    add_json(p)
    p.set_defaults(func=cmd_hnn_reduce)
    p = hn_sub.add_parser("hexagon")
    p.add_argument("file")
    p.add_argument("--xi", required=True)
    p.add_argument("--xi-prime", required=True)
    p.add_argument("--phi", required=True,
                   help="involution pairs, e.g. 'x=y,u=v'")
    p.add_argument("--sub", required=True,
                   help="generator subset, e.g. 'x u'")
    add_json(p)
    p.set_defaults(func=cmd_hnn_hexagon)

    gr = top.add_parser("group", help="finite permutation groups")
    gr_sub = gr.add_subparsers(dest="sub", required=True)
    p = gr_sub.add_parser("lattice")
    p.add_argument("file")
    add_json(p)
    p.set_defaults(func=cmd_group_lattice)
    p = gr_sub.add_parser("classes")
    p.add_argument("file")
    add_json(p)
    p.set_defaults(func=cmd_group_classes)

    ig = top.add_parser("ig", help="invariable generation")
    ig_sub = ig.add_subparsers(dest="sub", required=True)
    p = ig_sub.add_parser("check")
    p.add_argument("file")
    p.add_argument("--set", required=True,
                   help="semicolon-separated cycle notation, e.g. '(0 1);(0 1 2)'")
    add_json(p)
    p.set_defaults(func=cmd_ig_check)
    p = ig_sub.add_parser("min")
    p.add_argument("file")
    p.add_argument("--bound", type=int, default=4)
    add_json(p)
    p.set_defaults(func=cmd_ig_min)
    p = ig_sub.add_parser("equiv")
    p.add_argument("file")
    add_json(p)
    p.set_defaults(func=cmd_ig_equiv)

    return parser


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ToolkitError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch())


def _tool_main(tool: str) -> None:
    sys.exit(dispatch([tool] + sys.argv[1:]))


def sc_main() -> None:
    _tool_main("sc")


def dehn_main() -> None:
    _tool_main("dehn")


def hnn_main() -> None:
    _tool_main("hnn")


def group_main() -> None:
    _tool_main("group")


def ig_main() -> None:
    _tool_main("ig")
