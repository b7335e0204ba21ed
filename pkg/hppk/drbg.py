"""
Deterministic seeded byte generator
The stream is SHA-256(seed || LE64(i)) for block index i = 0, 1, 2, ...
so key generation, encapsulation and KATs reproduce bit-for-bit everywhere.
"""
import hashlib
import secrets

from . import config
from .bigmod import Nat, byte_length
from .errors import SeedLength


class Drbg:
    """
    SHA-256 counter-mode generator.

    An instance is single-owner: share seeds, not generators, between threads.
    """

    def __init__(self, seed: bytes):
        if len(seed) != config.SEED_BYTES:
            raise SeedLength(f"seed must be {config.SEED_BYTES} bytes, got {len(seed)}")
        self._seed = bytes(seed)
        self._counter = 0
        self._buffer = bytearray()

    @classmethod
    def from_hex(cls, seed_hex: str) -> "Drbg":
        try:
            seed = bytes.fromhex(seed_hex)
        except ValueError as e:
            raise SeedLength(f"seed is not valid hex: {e}") from None
        return cls(seed)

    @classmethod
    def from_os_entropy(cls) -> "Drbg":
        return cls(secrets.token_bytes(config.SEED_BYTES))

    @property
    def seed(self) -> bytes:
        return self._seed

    @property
    def counter(self) -> int:
        """Index of the next block to be produced"""
        return self._counter

    def _next_block(self) -> bytes:
        block = hashlib.sha256(self._seed + self._counter.to_bytes(8, "little")).digest()
        self._counter += 1
        return block

    def random_bytes(self, num_bytes: int) -> bytes:
        while len(self._buffer) < num_bytes:
            self._buffer += self._next_block()
        out = bytes(self._buffer[:num_bytes])
        del self._buffer[:num_bytes]
        return out

    def uniform_below(self, bound: Nat) -> Nat:
        """Uniform value in [0, bound) by rejection sampling on byte-length(bound - 1) bytes"""
        if bound < 1:
            raise ValueError(f"bound must be at least 1, got {bound}")
        width = byte_length((bound - 1).bit_length())
        if width == 0:
            return 0
        while True:
            v = int.from_bytes(self.random_bytes(width), "little")
            if v < bound:
                return v

    def uniform_range(self, low: Nat, high: Nat) -> Nat:
        """Uniform value in [low, high)"""
        return low + self.uniform_below(high - low)

    def uniform_exact_bits(self, L: int) -> Nat:
        """Uniform value with bit length exactly L, i.e. in [2^(L-1), 2^L)"""
        if L < 2:
            raise ValueError(f"bit length must be at least 2, got {L}")
        v = int.from_bytes(self.random_bytes(byte_length(L)), "little")
        v &= (1 << L) - 1
        return v | (1 << (L - 1))


def drbg_new(seed: bytes) -> Drbg:
    return Drbg(seed)
