"""Deterministic random primitives used wherever the package needs randomness.

The generator is SplitMix64 (Steele, Lea & Flood 2014), chosen because it is
tiny enough to restate completely, which makes every sampled result
reproducible on any platform or language:

    state := (state + 0x9E3779B97F4A7C15) mod 2^64
    z := state
    z := (z XOR (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2^64
    z := (z XOR (z >> 27)) * 0x94D049BB133111EB mod 2^64
    output := z XOR (z >> 31)

Bounded draws use rejection sampling on the raw 64-bit stream (no modulo
bias), and k-subsets are drawn with a sparse partial Fisher-Yates shuffle of
0..n-1.  Sub-seeds for independent streams are derived with ``derive_seed``,
which folds each component (FNV-1a hashed when textual) into the master seed
through the SplitMix64 finalizer.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


def mix64(x: int) -> int:
    """SplitMix64 output finalizer: scramble a 64-bit value."""
    x &= _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def fnv1a64(text: str) -> int:
    """FNV-1a hash of a UTF-8 string, used to fold names into seeds."""
    h = _FNV_OFFSET
    for byte in text.encode("utf-8"):
        h = ((h ^ byte) * _FNV_PRIME) & _MASK64
    return h


def derive_seed(master: int, *components: int | str) -> int:
    """Deterministic sub-seed from a master seed and identifying components."""
    x = mix64(master)
    for component in components:
        if isinstance(component, str):
            component = fnv1a64(component)
        x = mix64(x ^ (component & _MASK64))
    return x


class SplitMix64:
    """Seeded 64-bit generator; see the module docstring for the algorithm."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_uint64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        return mix64(self._state)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n), unbiased via rejection."""
        if n <= 0:
            raise ValueError("bound must be positive")
        limit = ((1 << 64) // n) * n
        while True:
            x = self.next_uint64()
            if x < limit:
                return x % n

    def sample(self, population_size: int, k: int) -> list[int]:
        """k distinct uniform draws from 0..population_size-1, in draw order.

        Sparse partial Fisher-Yates: only touched slots of the virtual pool
        are materialized, so cost is O(k) regardless of population size.
        """
        if not 1 <= k <= population_size:
            raise ValueError(
                f"need 1 <= k <= population size, got k={k}, size={population_size}"
            )
        swaps: dict[int, int] = {}
        out = []
        for i in range(k):
            j = i + self.below(population_size - i)
            vi = swaps.get(i, i)
            vj = swaps.get(j, j)
            swaps[i] = vj
            swaps[j] = vi
            out.append(vj)
        return out
