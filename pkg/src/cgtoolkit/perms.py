"""Exhaustive finite permutation group engine.

Conventions: points are 0-based; compositions apply the left factor last,
(a * b)(x) = a(b(x)); cosets and actions are left throughout.  Groups are
fully enumerated, bounded by a configurable order bound.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import NotNormal, OrderBoundExceeded, ParseError

DEFAULT_ORDER_BOUND = 5040


class Permutation:
    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection: {images}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, *a):
        raise AttributeError("Permutation is immutable")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # left factor applied last
        return Permutation(tuple(self.images[other.images[i]]
                                 for i in range(len(self.images))))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            point = self.images[start]
            while point != start:
                cycle.append(point)
                seen[point] = True
                point = self.images[point]
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def __repr__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    @staticmethod
    def identity(degree: int) -> "Permutation":
        return Permutation(range(degree))

    @staticmethod
    def parse(text: str, degree: int) -> "Permutation":
        """Cycle notation, 0-based: '(0 1 2)(3 4)' or '()' for identity.
        Commas are accepted as separators."""
        images = list(range(degree))
        body = text.strip()
        if body in ("()", "", "id"):
            return Permutation(images)
        if not body.startswith("(") or not body.endswith(")"):
            raise ParseError(f"bad cycle notation: {text!r}")
        for chunk in body[1:-1].split(")("):
            points = [int(tok) for tok in chunk.replace(",", " ").split()]
            if len(set(points)) != len(points):
                raise ParseError(f"repeated point in cycle {chunk!r}")
            for p in points:
                if not 0 <= p < degree:
                    raise ParseError(f"point {p} outside degree {degree}")
            for a, b in zip(points, points[1:] + points[:1]):
                images[a] = b
        return Permutation(images)


class PermGroup:
    """A fully enumerated permutation group.  Identity at index 0; element
    order is breadth-first discovery from the sorted generators."""

    def __init__(self, degree: int, generators: Iterable[Permutation],
                 order_bound: int = DEFAULT_ORDER_BOUND):
        self.degree = degree
        self.generators = sorted(set(g for g in generators
                                     if not g.is_identity()))
        for g in self.generators:
            if g.degree != degree:
                raise ValueError("generator degree mismatch")
        identity = Permutation.identity(degree)
        elements = [identity]
        index = {identity: 0}
        queue = deque([identity])
        while queue:
            x = queue.popleft()
            for g in self.generators:
                y = g * x
                if y not in index:
                    if len(elements) >= order_bound:
                        raise OrderBoundExceeded(
                            f"closure exceeds order bound {order_bound}")
                    index[y] = len(elements)
                    elements.append(y)
                    queue.append(y)
        self.elements = elements
        self.index = index
        self.order = len(elements)
        self._inverses: Optional[list[int]] = None
        self._classes: Optional["ConjugacyClasses"] = None
        self._lattice: Optional[list["Subgroup"]] = None

    def __len__(self) -> int:
        return self.order

    def __contains__(self, p: Permutation) -> bool:
        return p in self.index

    def inverse_index(self, i: int) -> int:
        if self._inverses is None:
            self._inverses = [self.index[x.inverse()] for x in self.elements]
        return self._inverses[i]

    def is_trivial(self) -> bool:
        return self.order == 1


@dataclass(frozen=True)
class ConjugacyClasses:
    group: PermGroup
    class_id: tuple[int, ...]          # per element index
    representatives: tuple[int, ...]   # element index per class
    class_sizes: tuple[int, ...]

    def class_of(self, p: Permutation) -> int:
        return self.class_id[self.group.index[p]]

    def members(self, cid: int) -> list[int]:
        return [i for i, c in enumerate(self.class_id) if c == cid]


def conjugacy_classes(g: PermGroup) -> ConjugacyClasses:
    if g._classes is not None:
        return g._classes
    n = g.order
    class_id = [-1] * n
    reps: list[int] = []
    sizes: list[int] = []
    for i in range(n):
        if class_id[i] != -1:
            continue
        cid = len(reps)
        reps.append(i)
        orbit = {i}
        frontier = [i]
        class_id[i] = cid
        while frontier:
            j = frontier.pop()
            x = g.elements[j]
            for a in g.elements:
                k = g.index[a * x * a.inverse()]
                if k not in orbit:
                    orbit.add(k)
                    class_id[k] = cid
                    frontier.append(k)
        sizes.append(len(orbit))
    result = ConjugacyClasses(group=g, class_id=tuple(class_id),
                              representatives=tuple(reps),
                              class_sizes=tuple(sizes))
    g._classes = result
    return result


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of an enumerated parent, stored as a membership mask over
    the parent's element indices."""

    parent: PermGroup
    mask: frozenset[int]
    normal: bool = False
    maximal: bool = False

    @property
    def order(self) -> int:
        return len(self.mask)

    def __contains__(self, p: Permutation) -> bool:
        idx = self.parent.index.get(p)
        return idx is not None and idx in self.mask

    def contains_index(self, i: int) -> bool:
        return i in self.mask

    def elements(self) -> list[Permutation]:
        return [self.parent.elements[i] for i in sorted(self.mask)]

    def is_proper(self) -> bool:
        return self.order < self.parent.order

    def as_group(self) -> PermGroup:
        """The subgroup re-enumerated as a group in its own right (same
        degree)."""
        return PermGroup(self.parent.degree, self.elements(),
                         order_bound=self.order + 1)

    def sort_key(self) -> tuple:
        return (self.order, tuple(sorted(self.mask)))


def subgroup_closure(g: PermGroup, seed_indices: Iterable[int]) -> frozenset[int]:
    """Closure of a set of element indices under composition and inverse."""
    members = {0}
    frontier = deque()
    for i in set(seed_indices):
        if i not in members:
            members.add(i)
            frontier.append(i)
    gens = [g.elements[i] for i in sorted(members)]
    # BFS products until closed
    queue = deque(members)
    while queue:
        i = queue.popleft()
        x = g.elements[i]
        for j in list(members):
            for prod in (x * g.elements[j], g.elements[j] * x):
                k = g.index[prod]
                if k not in members:
                    members.add(k)
                    queue.append(k)
        inv = g.inverse_index(i)
        if inv not in members:
            members.add(inv)
            queue.append(inv)
    return frozenset(members)


def make_subgroup(g: PermGroup, mask: frozenset[int],
                  maximal: bool = False) -> Subgroup:
    return Subgroup(parent=g, mask=mask, normal=is_normal_mask(g, mask),
                    maximal=maximal)


def is_normal_mask(g: PermGroup, mask: frozenset[int]) -> bool:
    for a in g.elements:
        a_inv = a.inverse()
        for i in mask:
            if g.index[a * g.elements[i] * a_inv] not in mask:
                return False
    return True


def subgroup_lattice(g: PermGroup) -> list[Subgroup]:
    """All subgroups, bottom-up: cyclic subgroups, then iterated one-element
    extensions, deduplicated by mask.  Normal and maximal flags computed.
    Canonical order: (order, sorted mask)."""
    if g._lattice is not None:
        return g._lattice
    masks: set[frozenset[int]] = {frozenset({0})}
    frontier: set[frozenset[int]] = set(masks)
    for i in range(g.order):
        m = subgroup_closure(g, [i])
        if m not in masks:
            masks.add(m)
            frontier.add(m)
    while frontier:
        new_frontier: set[frozenset[int]] = set()
        for m in frontier:
            if len(m) == g.order:
                continue
            for i in range(g.order):
                if i in m:
                    continue
                ext = subgroup_closure(g, set(m) | {i})
                if ext not in masks:
                    masks.add(ext)
                    new_frontier.add(ext)
        frontier = new_frontier
    full = frozenset(range(g.order))
    masks.add(full)
    ordered = sorted(masks, key=lambda m: (len(m), tuple(sorted(m))))
    # maximality: proper subgroup with no strictly intermediate subgroup
    subgroups = []
    for m in ordered:
        maximal = False
        if len(m) < g.order:
            maximal = not any(m < other < full
                              for other in masks
                              if len(m) < len(other) < g.order)
        subgroups.append(make_subgroup(g, m, maximal=maximal))
    g._lattice = subgroups
    return subgroups


def core(g: PermGroup, h: Subgroup) -> Subgroup:
    """Core_G(H): intersection of all conjugates of H; the largest normal
    subgroup of G inside H, and the kernel of the coset action."""
    mask = set(h.mask)
    for a in g.elements:
        a_inv = a.inverse()
        conj = {g.index[a_inv * g.elements[i] * a] for i in h.mask}
        mask &= conj
        if len(mask) == 1:
            break
    return make_subgroup(g, frozenset(mask))


def coset_action(g: PermGroup, h: Subgroup) -> tuple[list[tuple[int, ...]], list[int]]:
    """Left-coset action.  Returns (table, coset_reps): table[i] is the
    permutation of cosets induced by element i; coset_reps are the minimal
    element indices representing each coset, in discovery order from the
    identity coset."""
    coset_of = [-1] * g.order
    reps: list[int] = []
    for i in range(g.order):
        if coset_of[i] != -1:
            continue
        cid = len(reps)
        reps.append(i)
        x = g.elements[i]
        for j in sorted(h.mask):
            coset_of[g.index[x * g.elements[j]]] = cid
    table = []
    for a in g.elements:
        images = tuple(coset_of[g.index[a * g.elements[r]]] for r in reps)
        table.append(images)
    return table, reps


def action_kernel(g: PermGroup, table: list[tuple[int, ...]]) -> frozenset[int]:
    n_points = len(table[0]) if table else 0
    ident = tuple(range(n_points))
    return frozenset(i for i, images in enumerate(table) if images == ident)


def quotient(g: PermGroup, n: Subgroup) -> tuple[PermGroup, list[int]]:
    """G/N as the image of the coset action on N's cosets.  Returns the
    quotient group and the per-element map to quotient element indices."""
    if not n.normal:
        raise NotNormal("quotient requires a normal subgroup")
    table, _ = coset_action(g, n)
    degree = len(table[0])
    gens = [Permutation(table[g.index[x]]) for x in g.generators]
    q = PermGroup(degree, gens, order_bound=g.order + 1)
    elem_map = [q.index[Permutation(table[i])] for i in range(g.order)]
    return q, elem_map


def orbit_quotient_action(g: PermGroup, n: Subgroup,
                          table: list[tuple[int, ...]]
                          ) -> tuple[PermGroup, list[int], list[tuple[int, ...]]]:
    """Merge the action's points into N-orbits and induce the quotient-group
    action on them.  Returns (quotient group, elem_map, quotient action
    table indexed by quotient element)."""
    if not n.normal:
        raise NotNormal("orbit quotient requires a normal subgroup")
    n_points = len(table[0])
    orbit_of = [-1] * n_points
    n_orbits = 0
    for p in range(n_points):
        if orbit_of[p] != -1:
            continue
        oid = n_orbits
        n_orbits += 1
        stack = [p]
        orbit_of[p] = oid
        while stack:
            q_pt = stack.pop()
            for i in n.mask:
                img = table[i][q_pt]
                if orbit_of[img] == -1:
                    orbit_of[img] = oid
                    stack.append(img)
    orbit_rep = [orbit_of.index(o) for o in range(n_orbits)]
    quot, elem_map = quotient(g, n)
    q_table: list[Optional[tuple[int, ...]]] = [None] * quot.order
    for i in range(g.order):
        qi = elem_map[i]
        if q_table[qi] is None:
            q_table[qi] = tuple(orbit_of[table[i][orbit_rep[o]]]
                                for o in range(n_orbits))
    assert all(t is not None for t in q_table)
    return quot, elem_map, q_table  # type: ignore[return-value]
