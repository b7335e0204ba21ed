"""
HPPK key encapsulation
Key generation, randomized encapsulation over (x, u_1..u_m) and
decapsulation by solving f(x) - k*h(x) = 0 (mod p) for lambda = 1.
"""
import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from . import config
from .bigmod import Nat, mod_inverse
from .drbg import Drbg
from .errors import DecapsulationFailure, LengthMismatch, ParameterError
from .params import KemParams
from .poly import Matrix, map_matrix, monomials, product_coefficients, sample_beta, sample_private_polys
from .ring import HiddenRing, sample_rings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KemPrivateKey:
    f: Tuple[Nat, Nat]
    h: Tuple[Nat, Nat]
    ring1: HiddenRing
    ring2: HiddenRing


@dataclass(frozen=True)
class KemPublicKey:
    P: Matrix
    Q: Matrix


@dataclass(frozen=True)
class Ciphertext:
    segments: Tuple[Tuple[Nat, Nat], ...]


@dataclass(frozen=True)
class KemKeyMaterial:
    """Key pair plus the construction-time internals (beta and plaintext coefficients)"""
    sk: KemPrivateKey
    pk: KemPublicKey
    c: Matrix
    p_plain: Matrix
    q_plain: Matrix


def _check_params(params: KemParams):
    if params.lam != 1:
        raise ParameterError("decapsulation is implemented for lambda = 1 only")


def kem_key_material(params: KemParams, g: Drbg) -> KemKeyMaterial:
    _check_params(params)
    p = params.p
    f, h = sample_private_polys(g, p, params.lam)
    c = sample_beta(g, p, params.n, params.m)
    p_plain = product_coefficients(f, c, p)
    q_plain = product_coefficients(h, c, p)
    ring1, ring2 = sample_rings(g, params.L, params.rings)

    pk = KemPublicKey(P=map_matrix(ring1.encrypt, p_plain), Q=map_matrix(ring2.encrypt, q_plain))
    sk = KemPrivateKey(f=f, h=h, ring1=ring1, ring2=ring2)
    logger.debug("KEM keygen %s: S1 %d bits, S2 %d bits", params.label(), ring1.S.bit_length(), ring2.S.bit_length())
    return KemKeyMaterial(sk=sk, pk=pk, c=c, p_plain=p_plain, q_plain=q_plain)


def kem_keygen(params: KemParams, g: Drbg) -> Tuple[KemPrivateKey, KemPublicKey]:
    material = kem_key_material(params, g)
    return material.sk, material.pk


def encapsulate_segment(pk: KemPublicKey, params: KemParams, x: Nat, u: Sequence[Nat]) -> Tuple[Nat, Nat]:
    """
    Evaluate both public polynomials at (x, u) as exact integer sums:
    Pbar = sum_ij P_ij * (u_j x^i mod p), likewise Qbar.
    """
    w = monomials(x, u, params.rows, params.p)
    Pbar = 0
    Qbar = 0
    for i in range(params.rows):
        for j in range(params.m):
            Pbar += pk.P[i][j] * w[i][j]
            Qbar += pk.Q[i][j] * w[i][j]
    return Pbar, Qbar


def _secret_from_roots(roots: Sequence[Nat], params: KemParams) -> bytes:
    raw = b"".join(x.to_bytes(params.seg_bytes, "little") for x in roots)
    return raw[:config.SHARED_SECRET_BYTES]


def encapsulate(pk: KemPublicKey, params: KemParams, g: Drbg) -> Tuple[Ciphertext, bytes]:
    if len(pk.P) != params.rows or len(pk.P[0]) != params.m:
        raise ParameterError("public key dimensions do not match the parameter set")

    p = params.p
    roots: List[Nat] = []
    segments = []
    for _ in range(params.num_segments):
        x = g.uniform_below(p)
        u = [g.uniform_below(p) for _ in range(params.m)]
        segments.append(encapsulate_segment(pk, params, x, u))
        roots.append(x)
    return Ciphertext(segments=tuple(segments)), _secret_from_roots(roots, params)


def decapsulation_ratio(sk: KemPrivateKey, params: KemParams, Pbar: Nat, Qbar: Nat) -> Nat:
    """k = f(x)/h(x) mod p, recovered from one segment with the noise cancelled"""
    p = params.p
    a = sk.ring1.decrypt(Pbar) % p
    bq = sk.ring2.decrypt(Qbar) % p
    if bq == 0:
        raise DecapsulationFailure("beta(x, u) * h(x) vanishes for this segment")
    return a * mod_inverse(bq, p) % p


def decapsulate_segment(sk: KemPrivateKey, params: KemParams, Pbar: Nat, Qbar: Nat) -> Nat:
    """Unique root of f0 + f1 x = k (h0 + h1 x) mod p"""
    p = params.p
    k = decapsulation_ratio(sk, params, Pbar, Qbar)
    f0, f1 = sk.f
    h0, h1 = sk.h
    denom = (f1 - k * h1) % p
    if denom == 0:
        raise DecapsulationFailure("degenerate segment: f1 - k*h1 = 0 (mod p)")
    return (k * h0 - f0) * mod_inverse(denom, p) % p


def decapsulate(sk: KemPrivateKey, params: KemParams, ct: Ciphertext) -> bytes:
    _check_params(params)
    if len(ct.segments) != params.num_segments:
        raise LengthMismatch(f"ciphertext has {len(ct.segments)} segments, expected {params.num_segments}")
    roots = [decapsulate_segment(sk, params, Pbar, Qbar) for Pbar, Qbar in ct.segments]
    return _secret_from_roots(roots, params)
