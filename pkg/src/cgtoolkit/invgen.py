"""Invariable generation analysis of finite permutation groups.

Three equivalent checkers:
  - ig_by_subgroups: no proper conjugacy-complete subgroup exists.  Only
    maximal subgroups are scanned: a proper conjugacy-complete subgroup is
    contained in some maximal subgroup, which is then itself
    conjugacy-complete (classes meeting the smaller subgroup meet the
    larger one).
  - ig_by_bruteforce: every choice of one conjugate per element of S
    generates.  Conjugate choices range over class members, since only the
    conjugacy orbit of each s matters; the first element's conjugate is
    pinned to the element itself (conjugating a whole tuple by one group
    element changes neither class membership nor generation).
  - ig_by_actions: every coset action on a proper subgroup has an element
    of S acting without fixed points.

The empty set invariably generates exactly the trivial group.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import PreconditionViolated, SearchBoundExceeded
from .perms import (PermGroup, Permutation, Subgroup, conjugacy_classes, core,
                    coset_action, quotient, subgroup_closure, subgroup_lattice)

BRUTE_FORCE_BOUND = 10**6


@dataclass(frozen=True)
class IgVerdict:
    invariably_generates: bool
    witness_kind: str = "none"  # conjugacy_complete_subgroup | failing_tuple
    #                             | fixed_point_free_gap | none
    witness_subgroup: Optional[Subgroup] = None
    witness_tuple: Optional[dict[Permutation, Permutation]] = None


def _check_membership(g: PermGroup, s: Sequence[Permutation]) -> None:
    for x in s:
        if x not in g:
            raise PreconditionViolated(f"{x!r} is not an element of the group")


def is_conjugacy_complete(g: PermGroup, h: Subgroup,
                          s: Sequence[Permutation]) -> bool:
    """Does h intersect the conjugacy class of every element of s?"""
    _check_membership(g, s)
    classes = conjugacy_classes(g)
    hit = [False] * len(classes.representatives)
    for i in h.mask:
        hit[classes.class_id[i]] = True
    return all(hit[classes.class_of(x)] for x in s)


def ig_by_subgroups(g: PermGroup, s: Sequence[Permutation]) -> IgVerdict:
    _check_membership(g, s)
    for h in subgroup_lattice(g):
        if not h.maximal:
            continue
        if is_conjugacy_complete(g, h, s):
            return IgVerdict(invariably_generates=False,
                             witness_kind="conjugacy_complete_subgroup",
                             witness_subgroup=h)
    return IgVerdict(invariably_generates=True)


def ig_by_bruteforce(g: PermGroup, s: Sequence[Permutation],
                     bound: int = BRUTE_FORCE_BOUND) -> IgVerdict:
    _check_membership(g, s)
    s = list(s)
    classes = conjugacy_classes(g)
    choice_lists = []
    total = 1
    for pos, x in enumerate(s):
        if pos == 0:
            members = [x]
        else:
            members = [g.elements[i]
                       for i in classes.members(classes.class_of(x))]
        choice_lists.append(members)
        total *= len(members)
        if total > bound:
            raise SearchBoundExceeded(
                f"conjugate tuple space {total} exceeds bound {bound}")
    for choice in itertools.product(*choice_lists):
        mask = subgroup_closure(g, [g.index[x] for x in choice])
        if len(mask) < g.order:
            return IgVerdict(
                invariably_generates=False,
                witness_kind="failing_tuple",
                witness_tuple=dict(zip(s, choice)))
    return IgVerdict(invariably_generates=True)


def ig_by_actions(g: PermGroup, s: Sequence[Permutation]) -> IgVerdict:
    """For each proper subgroup h, the coset action G/(h) must have some
    x in s without fixed points, i.e. class(x) disjoint from h."""
    _check_membership(g, s)
    classes = conjugacy_classes(g)
    s_classes = [classes.class_of(x) for x in s]
    for h in subgroup_lattice(g):
        if not h.is_proper():
            continue
        present = {classes.class_id[i] for i in h.mask}
        if all(c in present for c in s_classes):
            return IgVerdict(invariably_generates=False,
                             witness_kind="fixed_point_free_gap",
                             witness_subgroup=h)
    return IgVerdict(invariably_generates=True)


def class_representatives(g: PermGroup,
                          include_identity: bool = False) -> list[Permutation]:
    classes = conjugacy_classes(g)
    reps = [g.elements[i] for i in classes.representatives]
    if not include_identity:
        reps = [r for r in reps if not r.is_identity()]
    return reps


def min_ig_size(g: PermGroup,
                bound: int = 4) -> Optional[tuple[int, list[Permutation]]]:
    """Smallest k <= bound with an invariably generating set of k class
    representatives, or None."""
    if g.is_trivial():
        return 0, []
    reps = class_representatives(g)
    for k in range(1, bound + 1):
        for combo in itertools.combinations(reps, k):
            if ig_by_subgroups(g, list(combo)).invariably_generates:
                return k, list(combo)
    return None


@dataclass
class ExtensionReport:
    subgroup_ig: bool       # (a) H invariably generated by S
    quotient_ig: bool       # (b) G/N invariably generated by images of S'
    combined_ig: bool       # (c) G invariably generated by S union S'


def extension_ig_check(g: PermGroup, n: Subgroup, h: Subgroup,
                       s: Sequence[Permutation],
                       s_prime: Sequence[Permutation]) -> ExtensionReport:
    """Verify the three parts of the extension statement independently:
    if (a) and (b) hold, (c) must hold."""
    if not n.normal:
        raise PreconditionViolated("n must be normal in g")
    if not n.mask <= h.mask:
        raise PreconditionViolated("n must be contained in h")
    h_group = h.as_group()
    for x in s:
        if x not in h_group:
            raise PreconditionViolated("s must be a subset of h")
    _check_membership(g, list(s_prime))
    part_a = ig_by_subgroups(h_group, list(s)).invariably_generates
    quot, elem_map = quotient(g, n)
    images = [quot.elements[elem_map[g.index[x]]] for x in s_prime]
    part_b = ig_by_subgroups(quot, images).invariably_generates
    combined = list(s) + [x for x in s_prime if x not in list(s)]
    part_c = ig_by_subgroups(g, combined).invariably_generates
    return ExtensionReport(subgroup_ig=part_a, quotient_ig=part_b,
                           combined_ig=part_c)


@dataclass
class FiniteIndexReport:
    core_subgroup: Subgroup
    quotient_ig_set: list[Permutation]   # lifted to g
    extension: ExtensionReport

    @property
    def concluded(self) -> bool:
        return self.extension.combined_ig


def finite_index_ig_check(g: PermGroup, h: Subgroup,
                          s: Sequence[Permutation],
                          quotient_bound: int = 4) -> FiniteIndexReport:
    """Mechanize the finite-index argument: with N the core of h in g, find
    an IG set for g/N, lift it, and verify the extension check concludes."""
    h_group = h.as_group()
    if not ig_by_subgroups(h_group, list(s)).invariably_generates:
        raise PreconditionViolated("s does not invariably generate h")
    n = core(g, h)
    assert n.normal and n.mask <= h.mask
    quot, elem_map = quotient(g, n)
    found = min_ig_size(quot, bound=quotient_bound)
    if found is None:
        raise PreconditionViolated(
            f"no quotient IG set of size <= {quotient_bound} found")
    _, q_set = found
    # lift: any preimage works, IG being a class-level property
    lifted = []
    for q_elem in q_set:
        q_idx = quot.index[q_elem]
        pre = next(i for i in range(g.order) if elem_map[i] == q_idx)
        lifted.append(g.elements[pre])
    ext = extension_ig_check(g, n, h, list(s), lifted)
    return FiniteIndexReport(core_subgroup=n, quotient_ig_set=lifted,
                             extension=ext)


def random_conjugate(g: PermGroup, x: Permutation,
                     rng: random.Random) -> Permutation:
    a = rng.choice(g.elements)
    return a * x * a.inverse()
