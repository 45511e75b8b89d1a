"""Majority-vote amplification of a seeded decider, and universal-seed search.

A decider answers (word, seed) -> bit and is wrong with probability at most
p < 1/2 over a random seed.  Majority over an odd bundle of k seeds drives
the per-input error below exp(-2k(1/2-p)^2); picking k large enough for a
union bound over every length-n word makes a random bundle likely to be
correct on *all* inputs at once, which exhaustive verification then checks.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Callable, Iterator

Word = tuple[int, ...]

_MASK64 = (1 << 64) - 1


class CapacityError(ValueError):
    """The exhaustive input space exceeds the verification budget."""


def _mix(x: int) -> int:
    """splitmix64 finalizer: cheap, well-scrambled 64-bit hash step."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def word_parity(word: Word) -> int:
    """Default ground truth: parity of the token sum."""
    return sum(word) & 1


class SimulatedDecider:
    """A decider whose error events behave like independent Bernoulli(p) draws.

    ``decide`` flips the ground truth exactly when a 64-bit hash of
    (word, seed) lands below p * 2^64, so the error rate over a uniform
    64-bit seed is p (up to rounding of the threshold) and is independent
    across distinct (word, seed) pairs for hashing purposes.
    """

    def __init__(self, truth: Callable[[Word], int], p: float):
        if not 0 <= p < 0.5:
            raise ValueError(f"error bound p={p} must satisfy 0 <= p < 1/2")
        self.truth = truth
        self.p = p
        self._threshold = int(p * 2**64)
        self._word_hash: dict[Word, int] = {}

    def _hash_word(self, word: Word) -> int:
        h = self._word_hash.get(word)
        if h is None:
            h = 0x8BADF00D
            for tok in word:
                h = _mix(h ^ (tok + 1))
            self._word_hash[word] = h
        return h

    def decide(self, word: Word, seed: int) -> int:
        wrong = _mix(self._hash_word(word) ^ _mix(seed & _MASK64)) < self._threshold
        return self.truth(word) ^ int(wrong)


@dataclass(frozen=True)
class SeedBundle:
    """An odd-sized tuple of decider seeds to vote over."""

    seeds: tuple[int, ...]

    def __post_init__(self):
        if len(self.seeds) % 2 == 0:
            raise ValueError(f"bundle size {len(self.seeds)} must be odd")

    @property
    def k(self) -> int:
        return len(self.seeds)


def majority_vote(decider, bundle: SeedBundle, word: Word) -> int:
    """Run the decider once per seed and return the majority bit (no ties: k is odd)."""
    ones = sum(decider.decide(word, s) for s in bundle.seeds)
    return int(2 * ones > bundle.k)


def hoeffding_k(p: float, delta: float) -> int:
    """Smallest odd k with exp(-2k(1/2-p)^2) <= delta."""
    if not 0 <= p < 0.5:
        raise ValueError(f"error bound p={p} must satisfy 0 <= p < 1/2")
    if not 0 < delta < 1:
        raise ValueError(f"target delta={delta} must lie in (0, 1)")
    gamma = 2 * (0.5 - p) ** 2
    k = max(1, math.ceil(math.log(1 / delta) / gamma))
    while math.exp(-k * gamma) > delta:  # guard against float rounding
        k += 1
    return k if k % 2 else k + 1


def union_bound_k(n: int, vocab_size: int, delta_all: float, p: float) -> int:
    """Odd k making the union bound over all vocab^n inputs close at delta_all.

    Needs k >= (n ln vocab + ln(1/delta_all)) / (2 (1/2 - p)^2); a decider
    with p = 0 is never wrong, so k = 1 suffices there.
    """
    if not 0 < delta_all < 1:
        raise ValueError(f"delta_all={delta_all} must lie in (0, 1)")
    if p == 0:
        return 1
    gamma = 2 * (0.5 - p) ** 2
    k = max(1, math.ceil((n * math.log(vocab_size) + math.log(1 / delta_all)) / gamma))
    return k if k % 2 else k + 1


def all_words(n: int, vocab_size: int) -> Iterator[Word]:
    """Every length-n word over tokens 0..vocab_size-1, lexicographic."""
    return itertools.product(range(vocab_size), repeat=n)


def count_bundle_errors(decider, bundle: SeedBundle, n: int, vocab_size: int) -> int:
    """Exhaustive count of inputs where the majority vote disagrees with the truth."""
    return sum(
        1
        for w in all_words(n, vocab_size)
        if majority_vote(decider, bundle, w) != decider.truth(w)
    )


@dataclass
class SeedSearchResult:
    """Outcome of a universal-seed search; ``bundle`` is None on failure."""

    bundle: SeedBundle | None
    k: int
    attempts: int
    per_attempt_errors: list[int]

    @property
    def success(self) -> bool:
        return self.bundle is not None


def find_universal_seeds(
    decider,
    n: int,
    vocab_size: int,
    delta_all: float,
    rng_seed: int,
    max_attempts: int = 32,
    max_inputs: int = 1 << 20,
) -> SeedSearchResult:
    """Draw random bundles until one is correct on every length-n word.

    The bundle size comes from the union bound at ``delta_all``; each
    attempt is verified exhaustively, recording its error count.  The
    input space vocab^n must fit the ``max_inputs`` budget.  Failure after
    ``max_attempts`` returns a result with ``bundle=None`` and the full
    per-attempt error history.
    """
    if n < 1 or vocab_size < 1:
        raise ValueError("n and vocab_size must be >= 1")
    if max_attempts < 1:
        raise ValueError("max_attempts must be >= 1")
    n_words = vocab_size**n
    if n_words > max_inputs:
        raise CapacityError(f"{vocab_size}^{n} = {n_words} inputs exceeds budget {max_inputs}")
    k = union_bound_k(n, vocab_size, delta_all, decider.p)
    rng = random.Random(rng_seed)
    errors: list[int] = []
    for attempt in range(1, max_attempts + 1):
        bundle = SeedBundle(tuple(rng.getrandbits(64) for _ in range(k)))
        bad = count_bundle_errors(decider, bundle, n, vocab_size)
        errors.append(bad)
        if bad == 0:
            return SeedSearchResult(bundle, k, attempt, errors)
    return SeedSearchResult(None, k, max_attempts, errors)
