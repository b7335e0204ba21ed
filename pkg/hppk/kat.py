"""
Known-answer test generation and regeneration
A master seed expands into one 32-byte seed per record (and, for DS, a
message of 33*(count+1) bytes); each record then regenerates from its own seed.
"""
import logging
from typing import List, Tuple, Union

from . import config
from .codec import KatRecord, encode, params_header
from .drbg import Drbg
from .ds import ds_keygen, sign, verify
from .errors import DecapsulationFailure, HppkError
from .kem import decapsulate, encapsulate, kem_keygen
from .params import DsParams, KemParams

logger = logging.getLogger(__name__)


def kem_kat_record(params: KemParams, count: int, seed: bytes) -> KatRecord:
    g = Drbg(seed)
    sk, pk = kem_keygen(params, g)
    ct, ss = encapsulate(pk, params, g)
    if decapsulate(sk, params, ct) != ss:
        raise DecapsulationFailure(f"KAT record {count}: decapsulated secret differs")
    return KatRecord(count=count, seed=seed, pk=encode(pk, params), sk=encode(sk, params),
                     ct=encode(ct, params), ss=ss)


def ds_kat_record(params: DsParams, count: int, seed: bytes, msg: bytes) -> KatRecord:
    g = Drbg(seed)
    sk, pk = ds_keygen(params, g)
    sig = sign(sk, params, msg)
    if not verify(pk, params, msg, sig):
        raise HppkError(f"KAT record {count}: signature does not verify")
    return KatRecord(count=count, seed=seed, pk=encode(pk, params), sk=encode(sk, params),
                     msg=msg, sm=encode(sig, params) + msg)


def kat_inputs(master_seed: bytes, count: int) -> List[Tuple[bytes, bytes]]:
    """(record seed, message) pairs drawn from the master stream"""
    g = Drbg(master_seed)
    inputs = []
    for i in range(count):
        seed = g.random_bytes(config.SEED_BYTES)
        msg = g.random_bytes(33 * (i + 1))
        inputs.append((seed, msg))
    return inputs


def generate_kat(params: Union[KemParams, DsParams], count: int, master_seed: bytes) -> List[KatRecord]:
    records = []
    for i, (seed, msg) in enumerate(kat_inputs(master_seed, count)):
        if isinstance(params, KemParams):
            records.append(kem_kat_record(params, i, seed))
        else:
            records.append(ds_kat_record(params, i, seed, msg))
    logger.info("generated %d KAT records for %s", count, params.label())
    return records


def kat_file_header(params: Union[KemParams, DsParams]) -> str:
    return params_header(params, "kat")


def check_kat(params: Union[KemParams, DsParams], records: List[KatRecord]) -> List[int]:
    """Regenerate every record from its seed; return the counts that differ"""
    failed = []
    for rec in records:
        try:
            if isinstance(params, KemParams):
                fresh = kem_kat_record(params, rec.count, rec.seed)
            else:
                fresh = ds_kat_record(params, rec.count, rec.seed, rec.msg or b"")
        except HppkError as e:
            logger.info("KAT record %d failed to regenerate: %s", rec.count, e)
            failed.append(rec.count)
            continue
        if fresh != rec:
            failed.append(rec.count)
    return failed
