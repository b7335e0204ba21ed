"""
HPPK digital signatures
Signing evaluates f and h at each hash segment and moves the values into the
opposite hidden rings; verification rebuilds both sides of the cross-multiplied
decryption identity with Barrett quotients, so the moduli S1, S2 stay secret.
"""
import hashlib
import logging
from dataclasses import dataclass
from typing import List, Tuple

from .bigmod import Nat, barrett_precompute, barrett_quotient
from .drbg import Drbg
from .errors import MalformedSignature, ParameterError
from .params import DsParams
from .poly import Matrix, evaluate, map_matrix, powers, product_coefficients, sample_beta, sample_private_polys
from .ring import HiddenRing, sample_rings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DsPrivateKey:
    f: Tuple[Nat, Nat]
    h: Tuple[Nat, Nat]
    ring1: HiddenRing
    ring2: HiddenRing


@dataclass(frozen=True)
class DsPublicKey:
    pprime: Matrix
    qprime: Matrix
    mu: Matrix
    nu: Matrix
    s1: Nat
    s2: Nat


@dataclass(frozen=True)
class DsSignature:
    segments: Tuple[Tuple[Nat, Nat], ...]   # (F, H) per hash segment


@dataclass(frozen=True)
class DsKeyMaterial:
    """Key pair plus the values discarded by key generation (beta, P, Q, plaintext coefficients)"""
    sk: DsPrivateKey
    pk: DsPublicKey
    c: Matrix
    p_plain: Matrix
    q_plain: Matrix
    P: Matrix
    Q: Matrix
    beta: Nat


def ds_key_material(params: DsParams, g: Drbg) -> DsKeyMaterial:
    p, K = params.p, params.K
    f, h = sample_private_polys(g, p, params.lam)
    c = sample_beta(g, p, params.n, params.m)
    p_plain = product_coefficients(f, c, p)
    q_plain = product_coefficients(h, c, p)
    ring1, ring2 = sample_rings(g, params.L, 2)
    beta = g.uniform_range(1, p)

    P = map_matrix(ring1.encrypt, p_plain)
    Q = map_matrix(ring2.encrypt, q_plain)
    pk = DsPublicKey(
        pprime=map_matrix(lambda v: beta * v % p, P),
        qprime=map_matrix(lambda v: beta * v % p, Q),
        mu=map_matrix(lambda v: barrett_precompute(v, ring1.S, K), P),
        nu=map_matrix(lambda v: barrett_precompute(v, ring2.S, K), Q),
        s1=beta * ring1.S % p,
        s2=beta * ring2.S % p,
    )
    sk = DsPrivateKey(f=f, h=h, ring1=ring1, ring2=ring2)
    logger.debug("DS keygen %s", params.label())
    return DsKeyMaterial(sk=sk, pk=pk, c=c, p_plain=p_plain, q_plain=q_plain, P=P, Q=Q, beta=beta)


def ds_keygen(params: DsParams, g: Drbg) -> Tuple[DsPrivateKey, DsPublicKey]:
    material = ds_key_material(params, g)
    return material.sk, material.pk


def hash_to_segments(msg: bytes, params: DsParams) -> List[Nat]:
    """Split HASH(msg) into four little-endian chunks, each reduced mod p"""
    digest = hashlib.new(params.hash_name, msg).digest()
    w = params.seg_bytes
    return [int.from_bytes(digest[t * w:(t + 1) * w], "little") % params.p
            for t in range(params.seg_count)]


def sign(sk: DsPrivateKey, params: DsParams, msg: bytes) -> DsSignature:
    p = params.p
    segments = []
    for x in hash_to_segments(msg, params):
        fx = evaluate(sk.f, x, p)
        hx = evaluate(sk.h, x, p)
        # F pairs with the Q side (ring 2), H with the P side (ring 1)
        F = sk.ring2.decrypt(fx)
        H = sk.ring1.decrypt(hx)
        segments.append((F, H))
    return DsSignature(segments=tuple(segments))


def verification_coefficients(pk: DsPublicKey, params: DsParams, F: Nat, H: Nat) -> Tuple[Matrix, Matrix]:
    """
    U_ij = H p'_ij - s1 floor(H mu_ij / 2^K) mod p and
    V_ij = F q'_ij - s2 floor(F nu_ij / 2^K) mod p.
    """
    p, K = params.p, params.K
    U = tuple(
        tuple((H * pp - pk.s1 * barrett_quotient(H, mu, K)) % p for pp, mu in zip(prow, murow))
        for prow, murow in zip(pk.pprime, pk.mu)
    )
    V = tuple(
        tuple((F * qq - pk.s2 * barrett_quotient(F, nu, K)) % p for qq, nu in zip(qrow, nurow))
        for qrow, nurow in zip(pk.qprime, pk.nu)
    )
    return U, V


def verify(pk: DsPublicKey, params: DsParams, msg: bytes, sig: DsSignature) -> bool:
    if len(sig.segments) != params.seg_count:
        raise MalformedSignature(f"signature has {len(sig.segments)} segments, expected {params.seg_count}")
    bound = 1 << params.L
    for F, H in sig.segments:
        if not (0 <= F < bound and 0 <= H < bound):
            raise MalformedSignature(f"signature component exceeds {params.L} bits")
    if len(pk.pprime) != params.rows or len(pk.pprime[0]) != params.m:
        raise ParameterError("public key dimensions do not match the parameter set")

    p = params.p
    for x, (F, H) in zip(hash_to_segments(msg, params), sig.segments):
        U, V = verification_coefficients(pk, params, F, H)
        xp = powers(x, params.rows, p)
        for j in range(params.m):
            lhs = sum(U[i][j] * xp[i] for i in range(params.rows)) % p
            rhs = sum(V[i][j] * xp[i] for i in range(params.rows)) % p
            if lhs != rhs:
                logger.debug("DS verify: segment mismatch in column %d", j)
                return False
    return True
