"""
Multiprecision natural-number arithmetic
Modular inverse, full-width modular products and the Barrett primitives used
by key generation, signing and verification
"""
import math
from typing import Tuple

from Crypto.Util.number import isPrime

from .errors import NotInvertible

# Python ints are arbitrary precision; Nat is the non-negative subset.
Nat = int


def _check_nat(*values: int):
    for v in values:
        if v < 0:
            raise ValueError(f"expected a natural number, got {v}")


def gcd(a: Nat, b: Nat) -> Nat:
    """Greatest common divisor; gcd(0, b) = b"""
    _check_nat(a, b)
    return math.gcd(a, b)


def extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """
    The extended Euclidean algorithm.
    Return g = GCD(a, b) and x, y such that a*x + b*y = g.
    """
    last_remainder, remainder = a, b
    x, last_x, y, last_y = 0, 1, 1, 0

    while remainder:
        last_remainder, (quotient, remainder) = remainder, divmod(last_remainder, remainder)
        x, last_x = last_x - quotient * x, x
        y, last_y = last_y - quotient * y, y

    return last_remainder, last_x, last_y


def mod_inverse(a: Nat, m: Nat) -> Nat:
    """
    Compute x in [1, m) with a*x = 1 (mod m).

    :raise NotInvertible: when gcd(a mod m, m) != 1.
    """
    _check_nat(a)
    if m < 2:
        raise ValueError(f"modulus must be at least 2, got {m}")

    g, x, _ = extended_gcd(a % m, m)
    if g != 1:
        raise NotInvertible(f"{a} is not invertible mod {m} (gcd {g})")
    return x % m


def mul_mod(a: Nat, b: Nat, m: Nat) -> Nat:
    """(a*b) mod m from the full-width product"""
    _check_nat(a, b)
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    return (a * b) % m


def barrett_precompute(c: Nat, S: Nat, K: int) -> Nat:
    """floor(c * 2^K / S), the Barrett constant for multiplying by c modulo S"""
    _check_nat(c)
    if S < 1 or c >= S:
        raise ValueError("barrett_precompute requires S >= 1 and c < S")
    return (c << K) // S


def barrett_quotient(h: Nat, mu: Nat, K: int) -> Nat:
    """
    floor(h * mu / 2^K).

    Approximates floor(h * c / S) for mu = barrett_precompute(c, S, K); the
    result never overshoots and falls short by at most one.
    """
    _check_nat(h, mu)
    return (h * mu) >> K


def is_prime(n: int) -> bool:
    """Primality check used to validate parameter tables"""
    return n >= 2 and bool(isPrime(n))


def byte_length(bits: int) -> int:
    """Bytes needed to hold a value of the given bit width"""
    return (bits + 7) // 8
