"""Deterministic 64-bit pseudo-random generation.

Every stochastic operation in this package (edge/node sampling, synthetic
generation, sweep replicates) draws from SplitMix64, a published 64-bit
generator with a pure-integer state transition. Python integers make the
implementation exact on every platform, so identical seeds give identical
samples regardless of OS, architecture or interpreter version.

Sub-streams are derived with :func:`mix`, which folds stream indices into a
seed through the SplitMix64 finalizer. Derivation is associative-free on
purpose: ``mix(s, a, b)`` differs from ``mix(s, b, a)``.
"""

from __future__ import annotations

from typing import Sequence, TypeVar

_MASK = 0xFFFFFFFFFFFFFFFF
_GAMMA = 0x9E3779B97F4A7C15

T = TypeVar("T")

__all__ = ["Rng", "mix"]


def _finalize(z: int) -> int:
    # SplitMix64 avalanche (Steele, Lea, Flood 2014).
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK
    return z ^ (z >> 31)


def mix(seed: int, *streams: int) -> int:
    """Derive a sub-seed from ``seed`` and one or more stream indices.

    Each index is multiplied by the SplitMix64 increment, xor-folded into the
    running seed and passed through the finalizer. Used to give every layer,
    replicate and sweep column its own independent stream.
    """
    s = seed & _MASK
    for t in streams:
        s = _finalize((s ^ ((t + 1) * _GAMMA)) & _MASK)
    return s


class Rng:
    """SplitMix64 stream with unbiased integer sampling helpers."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        return _finalize(self._state)

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n) via rejection sampling (no modulo bias)."""
        if n <= 0:
            raise ValueError("randbelow requires n >= 1")
        limit = _MASK - (_MASK + 1) % n
        while True:
            r = self.next_u64()
            if r <= limit:
                return r % n

    def shuffle_prefix(self, items: Sequence[T], k: int) -> list[T]:
        """First ``k`` entries of the Fisher-Yates permutation of ``items``.

        The prefix at ``k1`` is always a prefix of the result at ``k2 >= k1``
        for the same stream, which makes removal sweeps nested across
        fractions.
        """
        n = len(items)
        if not 0 <= k <= n:
            raise ValueError(f"prefix length {k} out of range for {n} items")
        pool = list(items)
        for i in range(k):
            j = i + self.randbelow(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]

    def choice(self, items: Sequence[T]) -> T:
        return items[self.randbelow(len(items))]
