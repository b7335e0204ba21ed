"""
Parameter sets for HPPK KEM and DS
Production levels follow the published size tables; toy sets are explicit
overrides used only by the attack module.
"""
import hashlib
from typing import Dict

from pydantic import BaseModel, ValidationError, root_validator, validator

from . import config
from .bigmod import byte_length, is_prime
from .errors import ParameterError

# level -> (prime bits b, prime p)
KEM_LEVELS = {
    1: (32, 2**32 - 5),
    3: (48, 2**48 - 59),
    5: (64, 2**64 - 59),
}

# level -> (prime bits b, prime p, hash)
DS_LEVELS = {
    1: (64, 2**64 - 59, "sha256"),
    3: (96, 2**96 - 17, "sha384"),
    5: (128, 2**128 - 159, "sha512"),
}

DS_SEGMENTS = 4


def _check_prime_field(b: int, p: int):
    if not (1 << (b - 1)) < p < (1 << b):
        raise ValueError(f"p={p} is not a {b}-bit value")
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")


class KemParams(BaseModel):
    """Security-level record for HPPK KEM: the quadruple (log p, n, lambda, m) plus ring geometry"""
    level: int
    b: int
    p: int
    n: int = 1
    lam: int = 1
    m: int
    rings: int
    L: int
    toy: bool = False

    class Config:
        frozen = True

    @validator("rings")
    def _rings_supported(cls, v):
        if v not in (1, 2):
            raise ValueError("rings must be 1 (OHR) or 2 (THR)")
        return v

    @root_validator(skip_on_failure=True)
    def _check_level(cls, values):
        n, lam, m = values["n"], values["lam"], values["m"]
        b, p, L = values["b"], values["p"], values["L"]
        if n != 1 or lam != 1:
            raise ValueError("only n = 1, lambda = 1 is supported")
        if m < 1:
            raise ValueError("m must be positive")
        _check_prime_field(b, p)

        if values["toy"]:
            return values

        level = values["level"]
        if level not in KEM_LEVELS:
            raise ValueError(f"unknown KEM level {level}")
        if (b, p) != KEM_LEVELS[level]:
            raise ValueError(f"level {level} requires p = {KEM_LEVELS[level][1]}")
        if m not in (2, 3):
            raise ValueError("KEM requires m in {2, 3}")
        if L != 2 * b + 8:
            raise ValueError(f"hidden ring size must be 2b + 8 = {2 * b + 8} bits")
        if (n + lam + 1) * m * (p - 1) ** 2 >= 1 << (L - 1):
            raise ValueError("hidden ring too small for exact homomorphic evaluation")
        return values

    @property
    def rows(self) -> int:
        return self.n + self.lam + 1

    @property
    def field_bytes(self) -> int:
        return byte_length(self.b)

    @property
    def seg_bytes(self) -> int:
        return self.field_bytes

    @property
    def num_segments(self) -> int:
        return -(-config.SHARED_SECRET_BYTES // self.seg_bytes)

    @property
    def ring_bytes(self) -> int:
        return byte_length(self.L)

    @property
    def ct_value_bytes(self) -> int:
        # ceil(log2(rows * m)) extra bits for the unreduced column sums
        return byte_length(self.L + self.b + (self.rows * self.m - 1).bit_length())

    @property
    def pk_bytes(self) -> int:
        return 2 * self.rows * self.m * self.ring_bytes

    @property
    def sk_bytes(self) -> int:
        moduli = 1 if self.rings == 1 else 2
        return 4 * self.field_bytes + (2 + moduli) * self.ring_bytes

    @property
    def ct_bytes(self) -> int:
        return self.num_segments * 2 * self.ct_value_bytes

    @property
    def entropy_bits(self) -> int:
        return 2 * self.L

    @property
    def decryptable(self) -> bool:
        return self.rows * self.m * (self.p - 1) ** 2 < 1 << (self.L - 1)

    @property
    def variant(self) -> str:
        return "OHR" if self.rings == 1 else "THR"

    def header_fields(self) -> Dict[str, int]:
        return {"level": self.level, "m": self.m, "rings": self.rings}

    def label(self) -> str:
        return f"HPPK-{self.variant}-({self.b},{self.n},{self.lam},{self.m})"


class DsParams(BaseModel):
    """Security-level record for HPPK DS: configuration (n, lambda, m, L, log2 R)"""
    level: int
    b: int
    p: int
    n: int = 1
    lam: int = 1
    m: int = 1
    L: int
    K: int
    hash_name: str
    toy: bool = False

    class Config:
        frozen = True

    @validator("hash_name")
    def _hash_available(cls, v):
        if v not in hashlib.algorithms_available:
            raise ValueError(f"hash {v} is not available")
        if hashlib.new(v).digest_size % DS_SEGMENTS:
            raise ValueError(f"hash {v} digest does not split into {DS_SEGMENTS} segments")
        return v

    @root_validator(skip_on_failure=True)
    def _check_level(cls, values):
        n, lam, m = values["n"], values["lam"], values["m"]
        b, p, L, K = values["b"], values["p"], values["L"], values["K"]
        if n != 1 or lam != 1:
            raise ValueError("only n = 1, lambda = 1 is supported")
        if m < 1:
            raise ValueError("m must be positive")
        if K <= L:
            raise ValueError("Barrett exponent K must exceed L")
        _check_prime_field(b, p)

        if values["toy"]:
            return values

        level = values["level"]
        if level not in DS_LEVELS:
            raise ValueError(f"unknown DS level {level}")
        if (b, p, values["hash_name"]) != DS_LEVELS[level]:
            raise ValueError(f"level {level} requires p = {DS_LEVELS[level][1]} with {DS_LEVELS[level][2]}")
        if m not in (1, 2):
            raise ValueError("DS requires m in {1, 2}")
        if L != 2 * b + 16:
            raise ValueError(f"hidden ring size must be 2b + 16 = {2 * b + 16} bits")
        return values

    @property
    def barrett(self) -> int:
        return self.K - self.L

    @property
    def rows(self) -> int:
        return self.n + self.lam + 1

    @property
    def seg_count(self) -> int:
        return DS_SEGMENTS

    @property
    def seg_bytes(self) -> int:
        return hashlib.new(self.hash_name).digest_size // DS_SEGMENTS

    @property
    def field_bytes(self) -> int:
        return byte_length(self.b)

    @property
    def ring_bytes(self) -> int:
        return byte_length(self.L)

    @property
    def barrett_bytes(self) -> int:
        return byte_length(self.K)

    @property
    def pk_bytes(self) -> int:
        N = self.rows * self.m
        return 2 * N * self.field_bytes + 2 * N * self.barrett_bytes + 2 * self.field_bytes

    @property
    def sk_bytes(self) -> int:
        return 4 * self.field_bytes + 4 * self.ring_bytes

    @property
    def sig_bytes(self) -> int:
        return 2 * DS_SEGMENTS * self.ring_bytes

    @property
    def entropy_bits(self) -> int:
        return self.L

    def header_fields(self) -> Dict[str, int]:
        return {"level": self.level, "m": self.m, "barrett": self.barrett}

    def label(self) -> str:
        return f"HPPK-DS-({self.n},{self.lam},{self.m},{self.L},{self.K})"


class ToyParams(BaseModel):
    """Scaled-down instance for desk-scale attacks; L decouples from the production rule"""
    p: int
    L: int
    n: int = 1
    lam: int = 1
    m: int = 2
    barrett: int = config.TOY_DEFAULT_BARRETT

    class Config:
        frozen = True

    @root_validator(skip_on_failure=True)
    def _check_toy(cls, values):
        p, L = values["p"], values["L"]
        if not config.TOY_MIN_L <= L <= config.TOY_MAX_L:
            raise ValueError(f"toy L must be in [{config.TOY_MIN_L}, {config.TOY_MAX_L}]")
        if not config.TOY_MIN_B <= p.bit_length() <= config.TOY_MAX_B:
            raise ValueError(f"toy p must have {config.TOY_MIN_B}..{config.TOY_MAX_B} bits")
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if values["m"] < 1 or values["barrett"] < 1:
            raise ValueError("m and barrett must be positive")
        return values

    @property
    def b(self) -> int:
        return self.p.bit_length()

    @property
    def K(self) -> int:
        return self.L + self.barrett

    @property
    def rows(self) -> int:
        return self.n + self.lam + 1

    @property
    def decryptable(self) -> bool:
        return self.rows * self.m * (self.p - 1) ** 2 < 1 << (self.L - 1)

    def kem_params(self, rings: int = 2) -> KemParams:
        return KemParams(level=0, b=self.b, p=self.p, n=self.n, lam=self.lam,
                         m=self.m, rings=rings, L=self.L, toy=True)

    def ds_params(self) -> DsParams:
        return DsParams(level=0, b=self.b, p=self.p, n=self.n, lam=self.lam, m=self.m,
                        L=self.L, K=self.K, hash_name="sha256", toy=True)


def kem_params(level: int, m: int = 2, rings: int = 2) -> KemParams:
    """Production KEM parameters for NIST level 1, 3 or 5"""
    if level not in KEM_LEVELS:
        raise ParameterError(f"unknown KEM level {level}; choose from {sorted(KEM_LEVELS)}")
    b, p = KEM_LEVELS[level]
    try:
        return KemParams(level=level, b=b, p=p, m=m, rings=rings, L=2 * b + 8)
    except ValidationError as e:
        raise ParameterError(str(e)) from None


def ds_params(level: int, m: int = 1, barrett: int = 64) -> DsParams:
    """Production DS parameters; the Barrett exponent is K = L + barrett"""
    if level not in DS_LEVELS:
        raise ParameterError(f"unknown DS level {level}; choose from {sorted(DS_LEVELS)}")
    b, p, hash_name = DS_LEVELS[level]
    L = 2 * b + 16
    try:
        return DsParams(level=level, b=b, p=p, m=m, L=L, K=L + barrett, hash_name=hash_name)
    except ValidationError as e:
        raise ParameterError(str(e)) from None


def toy_params(p: int, L: int, m: int = 2, barrett: int = config.TOY_DEFAULT_BARRETT) -> ToyParams:
    try:
        return ToyParams(p=p, L=L, m=m, barrett=barrett)
    except ValidationError as e:
        raise ParameterError(str(e)) from None
