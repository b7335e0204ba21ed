"""
Hidden rings: the self-shared symmetric key of HPPK
A ring (R, S) encrypts a coefficient c as R*c mod S; the map preserves
addition and scalar multiplication, so public polynomials still evaluate.
"""
from dataclasses import dataclass
from typing import Tuple

from .bigmod import Nat, gcd, mod_inverse, mul_mod
from .drbg import Drbg


@dataclass(frozen=True)
class HiddenRing:
    S: Nat
    R: Nat
    Rinv: Nat

    @classmethod
    def from_pair(cls, R: Nat, S: Nat) -> "HiddenRing":
        return cls(S=S, R=R, Rinv=mod_inverse(R, S))

    def encrypt(self, c: Nat) -> Nat:
        return mul_mod(self.R, c, self.S)

    def decrypt(self, v: Nat) -> Nat:
        return mul_mod(self.Rinv, v, self.S)


def sample_multiplier(g: Drbg, S: Nat) -> HiddenRing:
    """Draw R in [1, S) until gcd(R, S) = 1"""
    while True:
        R = g.uniform_range(1, S)
        if gcd(R, S) == 1:
            return HiddenRing.from_pair(R, S)


def sample_ring(g: Drbg, L: int) -> HiddenRing:
    return sample_multiplier(g, g.uniform_exact_bits(L))


def sample_rings(g: Drbg, L: int, rings: int = 2) -> Tuple[HiddenRing, HiddenRing]:
    """Two hidden rings, or one modulus S shared by two independent multipliers when rings = 1"""
    ring1 = sample_ring(g, L)
    if rings == 1:
        return ring1, sample_multiplier(g, ring1.S)
    return ring1, sample_ring(g, L)
