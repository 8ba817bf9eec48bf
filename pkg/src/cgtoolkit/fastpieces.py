"""Exact class-level piece maxima for large symmetrized sets.

Instead of materializing every rotation, piece lengths are computed per
cyclic class.  Every closure word is a phase of some class, so "longest
common prefix of two distinct closure words" becomes "longest window shared
by two distinct (class, phase) sources".  Shared-window existence at a given
length is monotone in the length, so the maxima fall out of bisection over a
rolling-hash predicate evaluated with numpy.  Reported maxima are exact (up
to the negligible collision probability of a 62-bit double hash); the
witnesses handed back for failures are verified letter by letter.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .words import CyclicClass, SymmetrizedSet, Word, canonical_rotation

_MOD1 = 2147483647
_MOD2 = 2147483629
_BASE1 = 1000003
_BASE2 = 1000033
_OFFSET = 1 << 20  # shifts signed letters into a positive digit range


def _pow_array(base: int, length: int, mod: int) -> np.ndarray:
    out = np.ones(1, dtype=np.int64)
    mult = base % mod
    while len(out) < length:
        out = np.concatenate([out, (out * mult) % mod])
        mult = (mult * mult) % mod
    return out[:length]


class _Hasher:
    """Rolling polynomial hashes of every window of a fixed letter text."""

    def __init__(self, letters: Sequence[int]):
        arr = (np.asarray(letters, dtype=np.int64) + _OFFSET)
        n = len(arr)
        self.n = n
        self._pow1 = _pow_array(_BASE1, n + 1, _MOD1)
        self._pow2 = _pow_array(_BASE2, n + 1, _MOD2)
        inv1 = _pow_array(pow(_BASE1, _MOD1 - 2, _MOD1), n + 1, _MOD1)
        inv2 = _pow_array(pow(_BASE2, _MOD2 - 2, _MOD2), n + 1, _MOD2)
        self._pre1 = np.zeros(n + 1, dtype=np.int64)
        self._pre2 = np.zeros(n + 1, dtype=np.int64)
        np.cumsum((arr % _MOD1) * inv1[:n] % _MOD1, out=self._pre1[1:])
        np.cumsum((arr % _MOD2) * inv2[:n] % _MOD2, out=self._pre2[1:])
        self._pre1 %= _MOD1
        self._pre2 %= _MOD2

    def window_hashes(self, positions: np.ndarray, length: int) -> np.ndarray:
        """Combined 62-bit hash of text[p : p + length] for each p."""
        p = positions
        h1 = (self._pre1[p + length] - self._pre1[p]) % _MOD1
        h1 = h1 * self._pow1[p + length - 1] % _MOD1
        h2 = (self._pre2[p + length] - self._pre2[p]) % _MOD2
        h2 = h2 * self._pow2[p + length - 1] % _MOD2
        return (h1 << 31) | h2


class ClassIndex:
    """Hash indexes over the doubled text of one cyclic class."""

    def __init__(self, cls: CyclicClass):
        self.cls = cls
        self.n = cls.length
        self.period = cls.period
        doubled = cls.rep.letters * 2
        self.forward = _Hasher(doubled)
        self.backward = _Hasher(cls.rep.inverse().letters * 2)


def build_indexes(rset: SymmetrizedSet) -> list[ClassIndex]:
    return [ClassIndex(c) for c in rset.classes]


def _shared_window_classes(indexes: list[ClassIndex], length: int) -> np.ndarray:
    """Boolean per class: does some window of this class (a length-`length`
    prefix of one of its rotations) also occur as a window of a different
    (class, phase)?"""
    hashes = []
    owners = []
    for i, ci in enumerate(indexes):
        if ci.n < length:
            continue
        pos = np.arange(ci.period)
        hashes.append(ci.forward.window_hashes(pos, length))
        owners.append(np.full(ci.period, i, dtype=np.int64))
    result = np.zeros(len(indexes), dtype=bool)
    if not hashes:
        return result
    all_h = np.concatenate(hashes)
    all_o = np.concatenate(owners)
    order = np.argsort(all_h, kind="stable")
    h = all_h[order]
    dup = h[1:] == h[:-1]
    part = np.zeros(len(h), dtype=bool)
    part[1:] |= dup
    part[:-1] |= dup
    result[np.unique(all_o[order][part])] = True
    return result


def class_piece_maxima(indexes: list[ClassIndex]) -> list[int]:
    """Exact per-class maximum relator-relator piece length: the longest
    common prefix of a rotation of the class with any distinct closure word."""
    k = len(indexes)
    lo = [0] * k
    hi = [ci.n for ci in indexes]
    total_words = sum(ci.period for ci in indexes)
    if total_words < 2:
        return [0] * k
    while True:
        pending = [i for i in range(k) if lo[i] < hi[i]]
        if not pending:
            break
        widest = max(pending, key=lambda i: hi[i] - lo[i])
        length = (lo[widest] + hi[widest] + 1) // 2
        shared = _shared_window_classes(indexes, length)
        for i in range(k):
            if indexes[i].n < length:
                continue
            if shared[i]:
                lo[i] = max(lo[i], length)
            else:
                hi[i] = min(hi[i], length - 1)
    return lo


def piece_witness_pairs(
    indexes: list[ClassIndex], needed: dict[int, int]
) -> dict[int, tuple[int, int, int, int]]:
    """For each requested class -> piece length, a (class, phase, other class,
    other phase) pair realizing a shared window of that length.  One hashing
    pass per distinct length."""
    out: dict[int, tuple[int, int, int, int]] = {}
    by_length: dict[int, list[int]] = {}
    for target, length in needed.items():
        if length >= 1:
            by_length.setdefault(length, []).append(target)
    for length, targets in by_length.items():
        hashes = []
        owners = []
        phases = []
        for i, ci in enumerate(indexes):
            if ci.n < length:
                continue
            pos = np.arange(ci.period)
            hashes.append(ci.forward.window_hashes(pos, length))
            owners.append(np.full(ci.period, i, dtype=np.int64))
            phases.append(pos)
        if not hashes:
            continue
        all_h = np.concatenate(hashes)
        all_o = np.concatenate(owners)
        all_p = np.concatenate(phases)
        order = np.argsort(all_h, kind="stable")
        h = all_h[order]
        o = all_o[order]
        p = all_p[order]
        dup_left = np.concatenate(([False], h[1:] == h[:-1]))
        dup_right = np.concatenate((h[1:] == h[:-1], [False]))
        in_group = dup_left | dup_right
        for target in targets:
            js = np.flatnonzero(in_group & (o == target))
            if not len(js):
                continue
            j = js[0]
            partner = j - 1 if dup_left[j] else j + 1
            out[target] = (int(o[j]), int(p[j]),
                           int(o[partner]), int(p[partner]))
    return out


def _self_window_positions(ci: ClassIndex, length: int) -> np.ndarray:
    """Positions (cyclic, in [0, n)) at which the window occurring there, or
    its inverse, is hashed; returned as (hashes, positions) merged over both
    orientations."""
    n = ci.n
    pos = np.arange(n)
    fwd = ci.forward.window_hashes(pos, length)
    # a window of the inverse word at q is the inverse of the window of the
    # word at (n - length - q) mod n
    bwd = ci.backward.window_hashes(pos, length)
    mapped = (n - length - pos) % n
    return np.concatenate([fwd, bwd]), np.concatenate([pos, mapped])


def _has_gap_pair(positions: np.ndarray, length: int, n: int) -> bool:
    """Is there a pair of positions whose difference lies in [length, n-length]?
    Such a pair marks two disjoint occurrences within a single rotation."""
    if n - length < length:
        return False
    p = np.sort(positions)
    j = np.searchsorted(p, p + length, side="left")
    valid = j < len(p)
    j_clip = np.minimum(j, len(p) - 1)
    return bool(np.any(valid & (p[j_clip] <= p + (n - length))))


def _self_pred(ci: ClassIndex, length: int,
               collect: bool = False):
    hashes, positions = _self_window_positions(ci, length)
    order = np.argsort(hashes, kind="stable")
    h = hashes[order]
    pos = positions[order]
    starts = np.flatnonzero(np.concatenate(([True], h[1:] != h[:-1])))
    ends = np.concatenate((starts[1:], [len(h)]))
    for s, e in zip(starts, ends):
        if e - s < 2:
            continue
        group = pos[s:e]
        if _has_gap_pair(group, length, ci.n):
            if not collect:
                return True
            p = np.sort(group)
            j = np.searchsorted(p, p + length, side="left")
            for a_idx in range(len(p)):
                jj = j[a_idx]
                if jj < len(p) and p[jj] <= p[a_idx] + (ci.n - length):
                    return int(p[a_idx]), int(p[jj])
    return None if collect else False


def class_self_piece_maxima(indexes: list[ClassIndex]) -> list[int]:
    """Exact per-class maximum self-piece length: the longest U such that some
    rotation R of the class factors as R = U V U' V' with U' = U or U^-1."""
    maxima: dict[tuple[int, ...], int] = {}
    out = []
    for ci in indexes:
        key = ci.cls.rep.letters
        inv_key = canonical_rotation(ci.cls.rep.inverse()).letters
        if key in maxima:
            out.append(maxima[key])
            continue
        lo, hi = 0, ci.n // 2
        probe = 1
        while probe <= hi and _self_pred(ci, probe):
            lo = probe
            probe *= 2
        hi = min(hi, probe - 1)
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if _self_pred(ci, mid):
                lo = mid
            else:
                hi = mid - 1
        # a class and its inverse class have equal self-piece maxima:
        # inverting the cyclic word carries disjoint U / U^{+-1} occurrence
        # pairs to disjoint occurrence pairs
        maxima[key] = maxima[inv_key] = lo
        out.append(lo)
    return out


def self_piece_witness(ci: ClassIndex, length: int) -> Optional[tuple[int, int]]:
    """(phase, offset) such that the rotation at `phase` has its length-
    `length` prefix reoccurring (up to inversion) at `offset`."""
    if length < 1:
        return None
    found = _self_pred(ci, length, collect=True)
    if found is None:
        return None
    a, b = found
    return a, (b - a) % ci.n
