"""
HPPK: homomorphic polynomial public-key cryptography over hidden rings
Key encapsulation, digital signatures, bit-exact codecs, KATs, benchmarks and
toy-scale attacks.
"""
from .drbg import Drbg, drbg_new
from .ds import DsPrivateKey, DsPublicKey, DsSignature, ds_keygen, sign, verify
from .errors import HppkError
from .kem import Ciphertext, KemPrivateKey, KemPublicKey, decapsulate, encapsulate, kem_keygen
from .params import DsParams, KemParams, ToyParams, ds_params, kem_params, toy_params

__all__ = [
    "Drbg", "drbg_new",
    "KemParams", "DsParams", "ToyParams", "kem_params", "ds_params", "toy_params",
    "KemPrivateKey", "KemPublicKey", "Ciphertext", "kem_keygen", "encapsulate", "decapsulate",
    "DsPrivateKey", "DsPublicKey", "DsSignature", "ds_keygen", "sign", "verify",
    "HppkError",
]
