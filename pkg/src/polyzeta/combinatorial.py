"""Cyclically nonconsecutive tuples and the exact volume of the cyclic-sum polytope.

The polytope is ``{u in (0,1)^k : u_i + u_{i+1} < 1}`` with cyclic indexing.
Its volume is ``2^-k`` times one plus a sum, over ordered tuples of pairwise
nonadjacent indices on the cycle C_k, of ``prod_i 1/(i + alpha_1 + ... + alpha_i)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Iterator, Sequence

from .exact import PiMultiple

__all__ = [
    "AdmissibleTuple",
    "is_admissible",
    "enumerate_admissible",
    "alpha_exponents",
    "tuple_term",
    "volume_delta",
    "s_k_closed",
    "zeta_2k_closed",
    "zeta_2k_without_power_factor",
    "tuple_counts",
    "permutation_sum",
]


def is_admissible(k: int, entries: Sequence[int]) -> bool:
    """True iff `entries` are distinct indices in 1..k, no two adjacent on the cycle C_k.

    Tuples longer than k // 2 are never admissible; for k = 1 this rules out
    the lone index, which is its own cyclic neighbour.
    """
    if k < 1 or len(entries) > k // 2:
        return False
    if any(not 1 <= r <= k for r in entries):
        return False
    if len(set(entries)) != len(entries):
        return False
    for i, p in enumerate(entries):
        for q in entries[i + 1:]:
            if abs(p - q) in (1, k - 1):
                return False
    return True


@dataclass(frozen=True)
class AdmissibleTuple:
    k: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))
        if not is_admissible(self.k, self.entries):
            raise ValueError(f"{self.entries} is not cyclically nonconsecutive in [{self.k}]")

    def __len__(self) -> int:
        return len(self.entries)


def enumerate_admissible(k: int, n: int) -> Iterator[AdmissibleTuple]:
    """Yield every admissible ordered n-tuple over [k] once, in lexicographic order."""
    if k < 1 or n < 1 or n > k // 2:
        return
    chosen: list[int] = []

    def extend() -> Iterator[AdmissibleTuple]:
        if len(chosen) == n:
            yield AdmissibleTuple(k, tuple(chosen))
            return
        for r in range(1, k + 1):
            if all(abs(r - q) not in (0, 1, k - 1) for q in chosen):
                chosen.append(r)
                yield from extend()
                chosen.pop()

    yield from extend()


def _alpha_step(k: int, previous: Sequence[int], r: int) -> int:
    alpha = 2 - (k == 2)
    for q in previous:
        d = abs(q - r)
        alpha -= (d == 2) + (d == k - 2)
    return alpha


def alpha_exponents(t: AdmissibleTuple) -> tuple[int, ...]:
    """Exponents alpha_j = 2 - [k=2] - #{m<j : |r_m-r_j| = 2} - #{m<j : |r_m-r_j| = k-2}.

    For k = 4 a gap of 2 is also a gap of k - 2 and is counted twice.
    """
    k, entries = t.k, t.entries
    return tuple(_alpha_step(k, entries[:j], r) for j, r in enumerate(entries))


def tuple_term(alphas: Sequence[int]) -> Fraction:
    """prod_{i=1}^{n} 1 / (i + alpha_1 + ... + alpha_i)."""
    den = 1
    running = 0
    for i, a in enumerate(alphas, start=1):
        running += a
        den *= i + running
    return Fraction(1, den)


def permutation_sum(k: int, indices: Sequence[int]) -> Fraction:
    """Sum of tuple_term over all orderings of one admissible index set."""
    return sum(
        (tuple_term(alpha_exponents(AdmissibleTuple(k, p))) for p in permutations(indices)),
        Fraction(0),
    )


def _tuple_histogram(k: int) -> Counter:
    """Histogram {(n, prod_i (i + alpha_1 + ... + alpha_i)): tuple count} over all admissible tuples.

    Depth-first over prefixes with bitmasks. Rotations of [k] preserve both
    admissibility and the alpha vector, so only tuples with r_1 = 1 are
    walked and every count is scaled by k.
    """
    hist: Counter = Counter()
    if k < 2:
        return hist
    n_max = k // 2
    base = 2 - (k == 2)
    weight = 2 if k == 4 else 1
    blocked = [0] * k
    near2 = [0] * k
    for r in range(k):
        for q in range(k):
            d = abs(r - q)
            if d in (0, 1, k - 1):
                blocked[r] |= 1 << q
            elif d in (2, k - 2):
                near2[r] |= 1 << q
    full = (1 << k) - 1

    def walk(depth: int, taken: int, forbidden: int, running: int, den: int) -> None:
        hist[depth, den] += 1
        if depth == n_max:
            return
        free = full & ~forbidden
        i = depth + 1
        while free:
            bit = free & -free
            free ^= bit
            r = bit.bit_length() - 1
            alpha = base - weight * (taken & near2[r]).bit_count()
            s = running + alpha
            walk(i, taken | bit, forbidden | blocked[r], s, den * (i + s))

    walk(1, 1, blocked[0], base, 1 + base)
    return Counter({key: c * k for key, c in hist.items()})


@lru_cache(maxsize=None)
def volume_delta(k: int) -> Fraction:
    """Exact volume of {u in (0,1)^k : u_i + u_{i+1} < 1, cyclically}."""
    if k < 1:
        raise ValueError("k must be >= 1")
    by_den: Counter = Counter()
    for (_, den), c in _tuple_histogram(k).items():
        by_den[den] += c
    total = Fraction(1) + sum((Fraction(c, d) for d, c in by_den.items()), Fraction(0))
    return total / 2**k


def tuple_counts(k: int) -> dict[int, int]:
    """Number of admissible ordered tuples of each length n = 1..k//2."""
    counts = {n: 0 for n in range(1, k // 2 + 1)}
    for (n, _), c in _tuple_histogram(k).items():
        counts[n] += c
    return counts


def s_k_closed(k: int) -> PiMultiple:
    """S(k) = sum_{n>=0} (-1)^{nk} / (2n+1)^k = (pi/2)^k * volume_delta(k)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return PiMultiple(volume_delta(k) / 2**k, k)


def zeta_2k_closed(k: int) -> PiMultiple:
    """zeta(2k) = 4^k / (4^k - 1) * S(2k)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    four_k = 4**k
    return s_k_closed(2 * k) * Fraction(four_k, four_k - 1)


def zeta_2k_without_power_factor(k: int) -> PiMultiple:
    """pi^{2k}/(4^k - 1) * (1 + tuple sum over [2k]): the zeta(2k) formula lacking the 1/4^k factor.

    Kept only to document that it overshoots zeta(2k) by exactly 4^k.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    four_k = 4**k
    bracket = volume_delta(2 * k) * four_k
    return PiMultiple(bracket / (four_k - 1), 2 * k)
