"""
Bit-exact serialization for HPPK artifacts
Raw encodings are headerless fixed-width little-endian integers so sizes match
the published tables; CLI files wrap them as a one-line header plus hex, and
KAT files use the line-oriented `key = hex` layout.
"""
from dataclasses import dataclass
from functools import singledispatch
from typing import Dict, List, Optional, Tuple, Union

from . import config
from .bigmod import Nat, gcd
from .ds import DsPrivateKey, DsPublicKey, DsSignature
from .errors import LengthMismatch, ParseError, RangeViolation
from .kem import Ciphertext, KemPrivateKey, KemPublicKey
from .params import DsParams, KemParams, ds_params, kem_params
from .poly import Matrix
from .ring import HiddenRing

Params = Union[KemParams, DsParams]


# ==================== Fixed-width integers ====================

class _Writer:
    def __init__(self):
        self.buf = bytearray()

    def put(self, value: Nat, width: int):
        try:
            self.buf += value.to_bytes(width, "little")
        except OverflowError:
            raise RangeViolation(f"value does not fit in {width} bytes") from None

    def put_matrix(self, matrix: Matrix, width: int):
        for row in matrix:
            for v in row:
                self.put(v, width)


class _Reader:
    def __init__(self, data: bytes, expected: int, what: str):
        if len(data) != expected:
            raise LengthMismatch(f"{what}: expected {expected} bytes, got {len(data)}")
        self.data = data
        self.pos = 0

    def take(self, width: int) -> Nat:
        v = int.from_bytes(self.data[self.pos:self.pos + width], "little")
        self.pos += width
        return v

    def take_matrix(self, rows: int, cols: int, width: int) -> Matrix:
        return tuple(tuple(self.take(width) for _ in range(cols)) for _ in range(rows))


def _check_below(values, bound: Nat, what: str):
    for v in values:
        if v >= bound:
            raise RangeViolation(f"{what} value {v} is not below {bound}")


def _ring_from_parts(R: Nat, S: Nat, L: int, what: str) -> HiddenRing:
    if not (1 << (L - 1)) <= S < (1 << L):
        raise RangeViolation(f"{what}: modulus is not exactly {L} bits")
    if not 1 <= R < S or gcd(R, S) != 1:
        raise RangeViolation(f"{what}: multiplier is not a unit modulo S")
    return HiddenRing.from_pair(R, S)


def _check_private_polys(f, h, p: Nat):
    for v in (*f, *h):
        if not 1 <= v < p:
            raise RangeViolation(f"private coefficient {v} is outside [1, p)")
    if (f[1] * h[0] - f[0] * h[1]) % p == 0:
        raise RangeViolation("private polynomials f and h are proportional")


def _flat(matrix: Matrix):
    return [v for row in matrix for v in row]


# ==================== KEM ====================

def encode_kem_public_key(pk: KemPublicKey, params: KemParams) -> bytes:
    w = _Writer()
    w.put_matrix(pk.P, params.ring_bytes)
    w.put_matrix(pk.Q, params.ring_bytes)
    return bytes(w.buf)


def decode_kem_public_key(data: bytes, params: KemParams) -> KemPublicKey:
    r = _Reader(data, params.pk_bytes, "KEM public key")
    P = r.take_matrix(params.rows, params.m, params.ring_bytes)
    Q = r.take_matrix(params.rows, params.m, params.ring_bytes)
    _check_below(_flat(P) + _flat(Q), 1 << params.L, "public key")
    return KemPublicKey(P=P, Q=Q)


def _encode_private(f, h, ring1: HiddenRing, ring2: HiddenRing, field_bytes: int, ring_bytes: int,
                    shared_modulus: bool) -> bytes:
    w = _Writer()
    for v in (*f, *h):
        w.put(v, field_bytes)
    w.put(ring1.R, ring_bytes)
    w.put(ring2.R, ring_bytes)
    w.put(ring1.S, ring_bytes)
    if not shared_modulus:
        w.put(ring2.S, ring_bytes)
    return bytes(w.buf)


def _decode_private(r: _Reader, p: Nat, L: int, field_bytes: int, ring_bytes: int, shared_modulus: bool):
    f = (r.take(field_bytes), r.take(field_bytes))
    h = (r.take(field_bytes), r.take(field_bytes))
    _check_private_polys(f, h, p)
    R1, R2, S1 = r.take(ring_bytes), r.take(ring_bytes), r.take(ring_bytes)
    S2 = S1 if shared_modulus else r.take(ring_bytes)
    return f, h, _ring_from_parts(R1, S1, L, "ring 1"), _ring_from_parts(R2, S2, L, "ring 2")


def encode_kem_private_key(sk: KemPrivateKey, params: KemParams) -> bytes:
    return _encode_private(sk.f, sk.h, sk.ring1, sk.ring2, params.field_bytes, params.ring_bytes,
                           params.rings == 1)


def decode_kem_private_key(data: bytes, params: KemParams) -> KemPrivateKey:
    r = _Reader(data, params.sk_bytes, "KEM private key")
    f, h, ring1, ring2 = _decode_private(r, params.p, params.L, params.field_bytes, params.ring_bytes,
                                         params.rings == 1)
    return KemPrivateKey(f=f, h=h, ring1=ring1, ring2=ring2)


def encode_ciphertext(ct: Ciphertext, params: KemParams) -> bytes:
    if len(ct.segments) != params.num_segments:
        raise LengthMismatch(f"ciphertext has {len(ct.segments)} segments, expected {params.num_segments}")
    w = _Writer()
    for Pbar, Qbar in ct.segments:
        w.put(Pbar, params.ct_value_bytes)
        w.put(Qbar, params.ct_value_bytes)
    return bytes(w.buf)


def decode_ciphertext(data: bytes, params: KemParams) -> Ciphertext:
    r = _Reader(data, params.ct_bytes, "KEM ciphertext")
    segments = tuple((r.take(params.ct_value_bytes), r.take(params.ct_value_bytes))
                     for _ in range(params.num_segments))
    # Pbar, Qbar are sums of rows*m products below 2^L * p
    _check_below([v for seg in segments for v in seg], params.rows * params.m * params.p << params.L,
                 "ciphertext")
    return Ciphertext(segments=segments)


# ==================== DS ====================

def encode_ds_public_key(pk: DsPublicKey, params: DsParams) -> bytes:
    w = _Writer()
    w.put_matrix(pk.pprime, params.field_bytes)
    w.put_matrix(pk.qprime, params.field_bytes)
    w.put_matrix(pk.mu, params.barrett_bytes)
    w.put_matrix(pk.nu, params.barrett_bytes)
    w.put(pk.s1, params.field_bytes)
    w.put(pk.s2, params.field_bytes)
    return bytes(w.buf)


def decode_ds_public_key(data: bytes, params: DsParams) -> DsPublicKey:
    r = _Reader(data, params.pk_bytes, "DS public key")
    rows, m = params.rows, params.m
    pprime = r.take_matrix(rows, m, params.field_bytes)
    qprime = r.take_matrix(rows, m, params.field_bytes)
    mu = r.take_matrix(rows, m, params.barrett_bytes)
    nu = r.take_matrix(rows, m, params.barrett_bytes)
    s1, s2 = r.take(params.field_bytes), r.take(params.field_bytes)
    _check_below(_flat(pprime) + _flat(qprime) + [s1, s2], params.p, "public key field")
    _check_below(_flat(mu) + _flat(nu), 1 << params.K, "Barrett constant")
    return DsPublicKey(pprime=pprime, qprime=qprime, mu=mu, nu=nu, s1=s1, s2=s2)


def encode_ds_private_key(sk: DsPrivateKey, params: DsParams) -> bytes:
    return _encode_private(sk.f, sk.h, sk.ring1, sk.ring2, params.field_bytes, params.ring_bytes, False)


def decode_ds_private_key(data: bytes, params: DsParams) -> DsPrivateKey:
    r = _Reader(data, params.sk_bytes, "DS private key")
    f, h, ring1, ring2 = _decode_private(r, params.p, params.L, params.field_bytes, params.ring_bytes, False)
    return DsPrivateKey(f=f, h=h, ring1=ring1, ring2=ring2)


def encode_signature(sig: DsSignature, params: DsParams) -> bytes:
    if len(sig.segments) != params.seg_count:
        raise LengthMismatch(f"signature has {len(sig.segments)} segments, expected {params.seg_count}")
    w = _Writer()
    for F, H in sig.segments:
        w.put(F, params.ring_bytes)
        w.put(H, params.ring_bytes)
    return bytes(w.buf)


def decode_signature(data: bytes, params: DsParams) -> DsSignature:
    r = _Reader(data, params.sig_bytes, "DS signature")
    segments = tuple((r.take(params.ring_bytes), r.take(params.ring_bytes)) for _ in range(params.seg_count))
    _check_below([v for seg in segments for v in seg], 1 << params.L, "signature")
    return DsSignature(segments=segments)


# ==================== Generic dispatch ====================

@singledispatch
def encode(artifact, params: Params) -> bytes:
    raise TypeError(f"no encoding for {type(artifact).__name__}")


encode.register(KemPublicKey, encode_kem_public_key)
encode.register(KemPrivateKey, encode_kem_private_key)
encode.register(Ciphertext, encode_ciphertext)
encode.register(DsPublicKey, encode_ds_public_key)
encode.register(DsPrivateKey, encode_ds_private_key)
encode.register(DsSignature, encode_signature)

DECODERS = {
    KemPublicKey: decode_kem_public_key,
    KemPrivateKey: decode_kem_private_key,
    Ciphertext: decode_ciphertext,
    DsPublicKey: decode_ds_public_key,
    DsPrivateKey: decode_ds_private_key,
    DsSignature: decode_signature,
}


def decode(data: bytes, params: Params, kind: type):
    try:
        decoder = DECODERS[kind]
    except KeyError:
        raise TypeError(f"no decoding for {kind.__name__}") from None
    return decoder(data, params)


# ==================== Artifact files ====================

def format_header(tag: str, fields: Dict[str, object], kind: str) -> str:
    parts = [tag, config.ARTIFACT_VERSION] + [f"{k}={v}" for k, v in fields.items()] + [f"kind={kind}"]
    return " ".join(parts)


def parse_header(line: str, line_no: int = 1) -> Tuple[str, Dict[str, str]]:
    """`HPPK-KEM v1 level=1 m=2 rings=1 kind=pk` -> ("HPPK-KEM", {"level": "1", ...})"""
    parts = line.split()
    if len(parts) < 2 or parts[0] not in (config.KEM_TAG, config.DS_TAG):
        raise ParseError(f"not an HPPK header: {line[:40]!r}", line_no)
    if parts[1] != config.ARTIFACT_VERSION:
        raise ParseError(f"unsupported version {parts[1]}", line_no)
    fields = {}
    for item in parts[2:]:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise ParseError(f"bad header field {item!r}", line_no)
        fields[key] = value
    return parts[0], fields


def armor(params: Params, kind: str, data: bytes) -> str:
    return params_header(params, kind) + "\n" + data.hex() + "\n"


def dearmor(text: str) -> Tuple[Params, str, bytes]:
    """Parse an artifact file into (parameter set, kind, raw bytes)"""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) != 2:
        raise ParseError("artifact must be one header line and one hex line", 1)
    tag, fields = parse_header(lines[0])
    try:
        data = bytes.fromhex(lines[1])
    except ValueError:
        raise ParseError("artifact body is not valid hex", 2) from None
    return params_from_header(tag, fields), fields.get("kind", ""), data


# ==================== KAT files ====================

KEM_KAT_FIELDS = ("seed", "pk", "sk", "ct", "ss")
DS_KAT_FIELDS = ("seed", "pk", "sk", "msg", "sm")


@dataclass
class KatRecord:
    count: int
    seed: bytes
    pk: bytes
    sk: bytes
    ct: Optional[bytes] = None
    ss: Optional[bytes] = None
    msg: Optional[bytes] = None
    sm: Optional[bytes] = None

    @property
    def fields(self) -> Tuple[str, ...]:
        return KEM_KAT_FIELDS if self.ct is not None else DS_KAT_FIELDS


def kat_write(records: List[KatRecord], header: Optional[str] = None) -> str:
    lines = []
    if header:
        lines += [f"# {header}", ""]
    for rec in records:
        lines.append(f"count = {rec.count}")
        for name in rec.fields:
            lines.append(f"{name} = {getattr(rec, name).hex().upper()}")
        lines.append("")
    return "\n".join(lines) + ("\n" if lines else "")


def kat_header(text: str) -> Optional[str]:
    for line in text.splitlines():
        if line.startswith("#"):
            return line[1:].strip()
        if line.strip():
            return None
    return None


def _finish_record(current: Dict, start_line: int) -> KatRecord:
    names = KEM_KAT_FIELDS if "ct" in current or "ss" in current else DS_KAT_FIELDS
    missing = [n for n in names if n not in current]
    if missing:
        raise ParseError(f"record is missing {', '.join(missing)}", start_line)
    extra = [n for n in current if n not in names and n != "count"]
    if extra:
        raise ParseError(f"record mixes KEM and DS fields: {', '.join(extra)}", start_line)
    return KatRecord(**current)


def kat_read(text: str) -> List[KatRecord]:
    records = []
    current: Optional[Dict] = None
    start_line = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = (part.strip() for part in line.partition("="))
        if not sep:
            raise ParseError(f"expected `key = value`, got {line[:40]!r}", line_no)
        if key == "count":
            if current is not None:
                records.append(_finish_record(current, start_line))
            try:
                current = {"count": int(value)}
            except ValueError:
                raise ParseError(f"count is not an integer: {value!r}", line_no) from None
            start_line = line_no
            continue
        if current is None:
            raise ParseError(f"field {key!r} before any `count` line", line_no)
        if key not in KEM_KAT_FIELDS and key not in DS_KAT_FIELDS:
            raise ParseError(f"unknown field {key!r}", line_no)
        if key in current:
            raise ParseError(f"duplicate field {key!r}", line_no)
        try:
            current[key] = bytes.fromhex(value)
        except ValueError:
            raise ParseError(f"field {key!r} is not valid hex", line_no) from None
    if current is not None:
        records.append(_finish_record(current, start_line))
    return records


def params_header(params: Params, kind: str) -> str:
    tag = config.KEM_TAG if isinstance(params, KemParams) else config.DS_TAG
    return format_header(tag, params.header_fields(), kind)


def params_from_header(tag: str, fields: Dict[str, str]) -> Params:
    try:
        level, m = int(fields["level"]), int(fields["m"])
        if tag == config.KEM_TAG:
            return kem_params(level, m, int(fields["rings"]))
        return ds_params(level, m, int(fields["barrett"]))
    except (KeyError, ValueError) as e:
        raise ParseError(f"header does not describe a parameter set: {e}", 1) from None
