"""Products of permutations of 5 points: serial vs tree folds, derived series.

A permutation is a tuple of images, ``p[i]`` being where point ``i`` goes;
``compose(a, b)`` is "apply b, then a".  Folding an n-term word costs n-1
compositions either way, but the balanced tree finishes in ceil(log2 n)
rounds while the left-to-right fold needs n-1.  The wire format is one
5-digit image string per line, e.g. ``10234`` for the transposition of
0 and 1.
"""

from __future__ import annotations

import itertools
import math
import random
from typing import Iterable, Sequence

from .meters import CostMeter

Perm = tuple[int, int, int, int, int]

IDENTITY: Perm = (0, 1, 2, 3, 4)
GROUP_ORDER = 120


def check_perm(p: Sequence[int]) -> Perm:
    if len(p) != 5 or sorted(p) != [0, 1, 2, 3, 4]:
        raise ValueError(f"{p!r} is not a permutation of 0..4")
    return tuple(p)  # type: ignore[return-value]


def compose(a: Perm, b: Perm) -> Perm:
    """(a o b)(i) = a(b(i)): apply b first, then a."""
    return (a[b[0]], a[b[1]], a[b[2]], a[b[3]], a[b[4]])


def inverse(p: Perm) -> Perm:
    inv = [0] * 5
    for i, img in enumerate(p):
        inv[img] = i
    return tuple(inv)  # type: ignore[return-value]


def parity(p: Perm) -> int:
    """0 for even, 1 for odd, via cycle decomposition."""
    seen = [False] * 5
    odd = 0
    for i in range(5):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        odd ^= (length - 1) & 1
    return odd


def fold_serial(word: Sequence[Perm], meter: CostMeter | None = None) -> Perm:
    """Left-to-right product; every composition is a sequential round."""
    if not word:
        raise ValueError("word must be non-empty")
    meter = meter if meter is not None else CostMeter()
    acc = word[0]
    for p in word[1:]:
        acc = compose(acc, p)
        meter.charge(1, 1)
    return acc


def fold_tree(word: Sequence[Perm], meter: CostMeter | None = None) -> Perm:
    """Balanced pairwise product: n-1 compositions in ceil(log2 n) rounds.

    Each level composes adjacent pairs at once (one depth unit), carrying a
    trailing odd element unchanged, so grouping — not order — changes and
    associativity keeps the product equal to the serial fold.
    """
    if not word:
        raise ValueError("word must be non-empty")
    meter = meter if meter is not None else CostMeter()
    level = list(word)
    while len(level) > 1:
        nxt = [compose(level[i], level[i + 1]) for i in range(0, len(level) - 1, 2)]
        if len(level) % 2:
            nxt.append(level[-1])
        meter.charge(len(level) // 2, 1)
        level = nxt
    return level[0]


def all_perms() -> list[Perm]:
    """The 120 permutations of 5 points."""
    return [tuple(p) for p in itertools.permutations(range(5))]  # type: ignore[misc]


def _closure(gens: Iterable[Perm]) -> frozenset[Perm]:
    elems = set(gens)
    while True:
        added = {compose(a, b) for a in elems for b in elems} - elems
        if not added:
            return frozenset(elems)
        elems |= added


def commutator_subgroup(elements: Iterable[Perm]) -> frozenset[Perm]:
    """Subgroup generated by all commutators a b a^-1 b^-1 of ``elements``."""
    elems = list(elements)
    comms = {
        compose(compose(a, b), compose(inverse(a), inverse(b)))
        for a in elems
        for b in elems
    }
    return _closure(comms)


def derived_series() -> list[int]:
    """Subgroup orders down the derived series of the full group, until stable.

    The last entry repeats the first stabilized order, e.g. a series that
    reaches a perfect subgroup of order 60 reads [120, 60, 60].
    """
    current: frozenset[Perm] = frozenset(all_perms())
    orders = [len(current)]
    while True:
        nxt = commutator_subgroup(current)
        orders.append(len(nxt))
        if len(nxt) == len(current):
            return orders
        current = nxt


def random_word(seed: int, n: int) -> list[Perm]:
    """n uniform random permutations, deterministic in ``seed``."""
    if n < 1:
        raise ValueError("word length must be >= 1")
    rng = random.Random(seed)
    return [tuple(rng.sample(range(5), 5)) for _ in range(n)]  # type: ignore[misc]


def format_perm(p: Perm) -> str:
    return "".join(str(i) for i in p)


def parse_perm(s: str) -> Perm:
    if len(s) != 5 or any(ch not in "01234" for ch in s):
        raise ValueError(f"{s!r} is not a 5-digit image string over 0..4")
    return check_perm(tuple(int(ch) for ch in s))


def format_words(word: Sequence[Perm]) -> str:
    return "\n".join(format_perm(p) for p in word) + "\n"


def parse_words(text: str) -> list[Perm]:
    word = [parse_perm(line.strip()) for line in text.splitlines() if line.strip()]
    if not word:
        raise ValueError("word file contains no permutations")
    return word


def memorization_log10(n: int) -> float:
    """log10 of the e^(n ln 120) table size a constant-depth memorizer needs."""
    return n * math.log10(GROUP_ORDER)
