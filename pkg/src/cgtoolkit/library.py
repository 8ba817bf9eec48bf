"""Bundled small-group library used by the verification suites."""

from __future__ import annotations

from .perms import PermGroup, Permutation


def cyclic(n: int) -> PermGroup:
    if n == 1:
        return PermGroup(1, [])
    images = list(range(1, n)) + [0]
    return PermGroup(n, [Permutation(images)])


def symmetric(n: int) -> PermGroup:
    if n == 1:
        return PermGroup(1, [])
    cycle = Permutation(list(range(1, n)) + [0])
    swap = Permutation([1, 0] + list(range(2, n)))
    return PermGroup(n, [swap, cycle])


def alternating(n: int) -> PermGroup:
    gens = []
    for i in range(n - 2):
        images = list(range(n))
        images[i], images[i + 1], images[i + 2] = images[i + 1], images[i + 2], images[i]
        gens.append(Permutation(images))
    return PermGroup(n, gens)


def dihedral(n: int) -> PermGroup:
    """Symmetries of the regular n-gon, acting on n vertices (order 2n)."""
    rotation = Permutation(list(range(1, n)) + [0])
    reflection = Permutation([(-i) % n for i in range(n)])
    return PermGroup(n, [rotation, reflection])


def quaternion8() -> PermGroup:
    """Q8 in its regular representation on 8 points, ordered
    (1, -1, i, -i, j, -j, k, -k)."""
    i = Permutation([2, 3, 1, 0, 6, 7, 5, 4])
    j = Permutation([4, 5, 7, 6, 1, 0, 2, 3])
    return PermGroup(8, [i, j])


def group_library() -> dict[str, PermGroup]:
    """The verification library: C2..C12, S3, S4, D4, D5, D6, Q8, A4."""
    lib: dict[str, PermGroup] = {}
    for n in range(2, 13):
        lib[f"C{n}"] = cyclic(n)
    lib["S3"] = symmetric(3)
    lib["S4"] = symmetric(4)
    lib["D4"] = dihedral(4)
    lib["D5"] = dihedral(5)
    lib["D6"] = dihedral(6)
    lib["Q8"] = quaternion8()
    lib["A4"] = alternating(4)
    return lib
