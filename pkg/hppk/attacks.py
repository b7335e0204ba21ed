"""
Desk-scale key and secret recovery attacks on toy HPPK instances
Each search mirrors an attack from the security analysis and reports its raw
iteration count so the stated complexities can be checked empirically.
Production parameter sets are refused: ToyParams caps L, p and search sizes.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import config
from .bigmod import Nat, mod_inverse
from .ds import DsPublicKey
from .errors import AttackRefused, NotFound
from .kem import KemPublicKey
from .params import ToyParams
from .poly import Matrix, flatten
from .ring import HiddenRing

logger = logging.getLogger(__name__)


@dataclass
class RingRecoveryResult:
    candidates: List[Tuple[Nat, Nat]]   # (R, S) pairs, sorted by S then R
    tried: int                          # coprime pairs decrypted

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self.candidates


@dataclass
class DsRecoveryResult:
    S: Nat
    recovered: Matrix     # P_ij (side "mu") or Q_ij (side "nu")
    iterations: int


@dataclass
class CensusResult:
    count: int
    tuples_tried: int
    mode: str             # "integer" or "field"


def _check_pk_shape(matrix: Matrix, toy: ToyParams):
    if len(matrix) != toy.rows or any(len(row) != toy.m for row in matrix):
        raise AttackRefused("public key dimensions do not match the toy parameters")


def _chunks(lo: int, hi: int, size: int) -> List[Tuple[int, int]]:
    return [(s, min(s + size, hi)) for s in range(lo, hi, size)]


def _run_chunks(fn, chunks: Sequence[Tuple[int, int]], workers: int) -> list:
    if workers <= 1:
        return [fn(c) for c in chunks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, chunks))


# ==================== KEM hidden ring ====================

def kem_ring_recovery(pk: KemPublicKey, toy: ToyParams, side: str = "P",
                      workers: int = config.ATTACK_WORKERS) -> RingRecoveryResult:
    """
    Guess every modulus S of bit length L and every unit R modulo S; keep
    (R, S) when R^-1 * P_ij mod S lands in F_p for all public coefficients.
    Enumerating R^-1 over the units is the same search as enumerating R.
    """
    if side not in ("P", "Q"):
        raise ValueError(f"side must be 'P' or 'Q', got {side!r}")
    if 2 * toy.L - 1 > config.TOY_MAX_SEARCH_BITS:
        raise AttackRefused(f"KEM ring search at L = {toy.L} exceeds 2^{config.TOY_MAX_SEARCH_BITS} pairs")
    matrix = pk.P if side == "P" else pk.Q
    _check_pk_shape(matrix, toy)
    values = np.array(flatten(matrix), dtype=np.int64)
    lo, hi = 1 << (toy.L - 1), 1 << toy.L
    # S must exceed every public coefficient it reduced
    start = max(lo, int(values.max()) + 1)

    def search(bounds: Tuple[int, int]):
        found, tried = [], 0
        for S in range(*bounds):
            r = np.arange(1, S, dtype=np.int64)
            units = r[np.gcd(r, S) == 1]
            tried += units.size
            keep = units
            for v in values:
                keep = keep[(keep * v) % S < toy.p]
                if not keep.size:
                    break
            found.extend((mod_inverse(int(rinv), S), S) for rinv in keep)
        return found, tried

    results = _run_chunks(search, _chunks(start, hi, max(1, config.ATTACK_CHUNK >> toy.L)), workers)
    candidates = sorted((pair for found, _ in results for pair in found), key=lambda rs: (rs[1], rs[0]))
    tried = sum(t for _, t in results)
    logger.info("KEM ring search L=%d: %d candidates after %d coprime pairs", toy.L, len(candidates), tried)
    return RingRecoveryResult(candidates=candidates, tried=tried)


# ==================== DS hidden ring ====================

def _reproduces(S: int, mus: Sequence[int], K: int) -> bool:
    """Exact check: every mu equals floor(2^K * ceil(S mu / 2^K) / S)"""
    for mu in mus:
        P = -((-S * mu) >> K)
        if (P << K) // S != mu:
            return False
    return True


def ds_ring_recovery(pk: DsPublicKey, toy: ToyParams, side: str = "mu",
                     workers: int = config.ATTACK_WORKERS) -> DsRecoveryResult:
    """
    Walk S upward from 2^(L-1): recover P_ij = ceil(S mu_ij / 2^K), recompute
    floor(2^K P_ij / S) and stop at the first S reproducing every mu_ij.

    The sweep runs in int64 on the top bits of each mu, which can only keep
    extra candidates; survivors are confirmed with exact integers.
    """
    if side not in ("mu", "nu"):
        raise ValueError(f"side must be 'mu' or 'nu', got {side!r}")
    if toy.L - 1 > config.TOY_MAX_SEARCH_BITS:
        raise AttackRefused(f"DS ring search at L = {toy.L} is too large")
    matrix = pk.mu if side == "mu" else pk.nu
    _check_pk_shape(matrix, toy)
    K = toy.K
    mus = [int(v) for v in flatten(matrix)]
    if any(v >> K for v in mus):
        raise AttackRefused("Barrett constants exceed the toy exponent K")
    lo, hi = 1 << (toy.L - 1), 1 << toy.L
    # S * (head + 1) < 2^(L + t) must fit in int64
    t = min(K, 62 - toy.L)
    heads = [mu >> (K - t) for mu in mus]

    def search(bounds: Tuple[int, int]) -> Optional[int]:
        S = np.arange(*bounds, dtype=np.int64)
        ok = np.ones(S.size, dtype=bool)
        for head in heads:
            P = -((-S * head) >> t)
            ok &= (P << t) < S * (head + 1)
        for s in S[ok].tolist():
            if _reproduces(s, mus, K):
                return s
        return None

    hits = [s for s in _run_chunks(search, _chunks(lo, hi, config.ATTACK_CHUNK), workers) if s is not None]
    if not hits:
        raise NotFound(f"no modulus of {toy.L} bits reproduces the Barrett constants")
    S = min(hits)
    recovered = tuple(tuple(-((-S * mu) >> K) for mu in row) for row in matrix)
    iterations = S - lo + 1
    logger.info("DS ring search L=%d side=%s: S found after %d iterations", toy.L, side, iterations)
    return DsRecoveryResult(S=S, recovered=recovered, iterations=iterations)


def ds_full_recovery(pk: DsPublicKey, toy: ToyParams,
                     workers: int = config.ATTACK_WORKERS) -> Tuple[DsRecoveryResult, DsRecoveryResult, int]:
    """Both rings: (S1 result, S2 result, combined iteration count <= 2^L)"""
    first = ds_ring_recovery(pk, toy, "mu", workers)
    second = ds_ring_recovery(pk, toy, "nu", workers)
    return first, second, first.iterations + second.iterations


# ==================== Ciphertext-only census ====================

def _tuple_grid(p: int, m: int) -> np.ndarray:
    """Every (x, u_1..u_m) in F_p^(m+1), one per row"""
    axes = np.meshgrid(*([np.arange(p, dtype=np.int64)] * (m + 1)), indexing="ij")
    return np.stack([a.ravel() for a in axes], axis=1)


def ciphertext_census(pk: KemPublicKey, segment: Tuple[Nat, Nat], toy: ToyParams,
                      rings: Optional[Iterable[HiddenRing]] = None) -> CensusResult:
    """
    Count (x, u) tuples consistent with one ciphertext segment.

    Without rings, a tuple counts when it reproduces Pbar and Qbar exactly as
    integers. With the hidden rings, both sides are unwrapped first and the
    tuple only has to satisfy the two resulting equations over F_p.
    """
    p, m, rows = toy.p, toy.m, toy.rows
    if p > config.CENSUS_MAX_P:
        raise AttackRefused(f"census needs p <= {config.CENSUS_MAX_P}, got {p}")
    _check_pk_shape(pk.P, toy)
    grid = _tuple_grid(p, m)
    x, u = grid[:, :1], grid[:, 1:]

    # w[t, i, j] = u_j * x^i mod p
    xp = np.ones((grid.shape[0], rows), dtype=np.int64)
    for i in range(1, rows):
        xp[:, i] = xp[:, i - 1] * x[:, 0] % p
    w = (xp[:, :, None] * u[:, None, :]) % p

    Pbar, Qbar = segment
    if rings is None:
        P = np.array(pk.P, dtype=np.int64)
        Q = np.array(pk.Q, dtype=np.int64)
        hit = ((w * P).sum(axis=(1, 2)) == Pbar) & ((w * Q).sum(axis=(1, 2)) == Qbar)
        mode = "integer"
    else:
        if not toy.decryptable:
            raise AttackRefused("field census needs rows*m*(p-1)^2 < 2^(L-1)")
        ring1, ring2 = rings
        p_plain = np.array([[ring1.decrypt(v) % p for v in row] for row in pk.P], dtype=np.int64)
        q_plain = np.array([[ring2.decrypt(v) % p for v in row] for row in pk.Q], dtype=np.int64)
        a = ring1.decrypt(Pbar) % p
        b = ring2.decrypt(Qbar) % p
        hit = (((w * p_plain).sum(axis=(1, 2)) % p == a) & ((w * q_plain).sum(axis=(1, 2)) % p == b))
        mode = "field"
    return CensusResult(count=int(hit.sum()), tuples_tried=int(grid.shape[0]), mode=mode)

