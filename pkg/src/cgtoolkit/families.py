"""Explicit small-cancellation word families over the template alphabet {X, Y}.

The family shapes are

    W_i  = X^(iN) Y X^(iN+1) Y ... X^(iN+N) Y
    W'_i = Y^(iN) X Y^(iN+1) X ... Y^(iN+N) X

with N the least integer strictly greater than max{rho', 10/(3 mu')}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import EmptyBase, InvalidSpec
from .pieces import CancellationParams, PieceReport, check_condition
from .words import Word, XY, substitute, symmetrize


@dataclass(frozen=True)
class FamilySpec:
    m: int
    mu_prime: Fraction
    rho_prime: int

    def __post_init__(self):
        if self.m < 1:
            raise InvalidSpec(f"family size m must be positive, got {self.m}")
        if not (0 < self.mu_prime < 1):
            raise InvalidSpec(f"mu' must lie in (0,1), got {self.mu_prime}")
        if self.rho_prime < 1:
            raise InvalidSpec(f"rho' must be positive, got {self.rho_prime}")

    @property
    def block_exponent(self) -> int:
        """N: least integer strictly greater than max{rho', 10/(3 mu')}.

        The binding piece of the family is the cyclic subword
        X^(2N-1) Y X^(2N) Y X^N shared by W_1 and W_2, of length 5N+1;
        requiring 5N+1 < mu' * ||W_1|| asymptotically needs
        N > 10/(3 mu'), slightly above the naive 3/mu' block-count bound."""
        bound = max(Fraction(self.rho_prime), Fraction(10, 3) / self.mu_prime)
        return math.floor(bound) + 1


def _staircase(i: int, n: int, step_gen: int, sep_gen: int) -> Word:
    """X^(iN) Y X^(iN+1) Y ... X^(iN+N) Y with X = step_gen, Y = sep_gen."""
    letters: list[int] = []
    for k in range(n + 1):
        letters.extend([step_gen + 1] * (i * n + k))
        letters.append(sep_gen + 1)
    return Word(letters, _reduced=True)


def generate_family(spec: FamilySpec) -> list[Word]:
    """W_1..W_m followed by the mirrored W'_1..W'_m, over {X, Y}."""
    n = spec.block_exponent
    ws = [_staircase(i, n, 0, 1) for i in range(1, spec.m + 1)]
    ws_mirror = [_staircase(i, n, 1, 0) for i in range(1, spec.m + 1)]
    return ws + ws_mirror


def certify_family(spec: FamilySpec) -> PieceReport:
    """Symmetrize the generated family and check the free-background
    condition at (mu', rho')."""
    rset = symmetrize(generate_family(spec), XY)
    return check_condition(rset, CancellationParams(spec.mu_prime, spec.rho_prime))


def duplicate_block(spec: FamilySpec, src: int, dst: int,
                    block: int) -> list[Word]:
    """Negative-control mutant: the generated family with W_dst's blocks at
    positions block and block+1 overwritten by W_src's blocks at the same
    positions (the X-exponents i*N+block and i*N+block+1 with i = src).

    The duplicated region and its surrounding runs form a long common
    subword of W_src and the mutated W_dst."""
    n = spec.block_exponent
    if not (1 <= src <= spec.m and 1 <= dst <= spec.m) or src == dst:
        raise InvalidSpec(
            f"need two distinct member indices in 1..{spec.m}, "
            f"got src={src}, dst={dst}")
    if not 0 <= block < n:
        raise InvalidSpec(f"block must lie in 0..{n - 1}, got {block}")
    exponents = [dst * n + k for k in range(n + 1)]
    exponents[block] = src * n + block
    exponents[block + 1] = src * n + block + 1
    letters: list[int] = []
    for e in exponents:
        letters.extend([1] * e)
        letters.append(2)
    words = generate_family(spec)
    words[dst - 1] = Word(letters, _reduced=True)
    return words


def power_substitution_family(rs: list[Word], a: Word, b: Word,
                              n: int) -> list[Word]:
    """Element-wise substitution X -> a^n, Y -> b^n with free reduction."""
    if n < 1:
        raise InvalidSpec(f"power N must be positive, got {n}")
    if not a or not b:
        raise EmptyBase("base words must be nonempty after reduction")
    a_n = a ** n
    b_n = b ** n
    if not a_n or not b_n:
        raise EmptyBase("base word power reduces to empty")
    return [substitute(r, a_n, b_n) for r in rs]
