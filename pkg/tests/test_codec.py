import pytest

from hppk.codec import (KatRecord, armor, dearmor, decode, encode, kat_header, kat_read, kat_write,
                        params_from_header, params_header, parse_header)
from hppk.drbg import Drbg
from hppk.ds import DsPrivateKey, DsPublicKey, DsSignature, ds_keygen, sign
from hppk.errors import LengthMismatch, ParseError, RangeViolation
from hppk.kem import Ciphertext, KemPrivateKey, KemPublicKey, encapsulate, kem_keygen
from hppk.params import ds_params, kem_params

SEED = bytes.fromhex("c3" * 32)


def kem_artifacts(params):
    g = Drbg(SEED)
    sk, pk = kem_keygen(params, g)
    ct, _ = encapsulate(pk, params, g)
    return {KemPrivateKey: sk, KemPublicKey: pk, Ciphertext: ct}


def ds_artifacts(params):
    sk, pk = ds_keygen(params, Drbg(SEED))
    return {DsPrivateKey: sk, DsPublicKey: pk, DsSignature: sign(sk, params, b"codec")}


@pytest.mark.parametrize("level,m,rings", [(1, 2, 1), (1, 2, 2), (3, 3, 1), (5, 3, 2)])
def test_kem_encodings(level, m, rings):
    params = kem_params(level, m, rings)
    arts = kem_artifacts(params)
    sizes = {KemPublicKey: params.pk_bytes, KemPrivateKey: params.sk_bytes, Ciphertext: params.ct_bytes}
    for kind, art in arts.items():
        raw = encode(art, params)
        assert len(raw) == sizes[kind]
        assert decode(raw, params, kind) == art


@pytest.mark.parametrize("level,m,barrett", [(1, 1, 64), (3, 1, 64), (5, 2, 32), (1, 2, 144)])
def test_ds_encodings(level, m, barrett):
    params = ds_params(level, m, barrett)
    arts = ds_artifacts(params)
    sizes = {DsPublicKey: params.pk_bytes, DsPrivateKey: params.sk_bytes, DsSignature: params.sig_bytes}
    for kind, art in arts.items():
        raw = encode(art, params)
        assert len(raw) == sizes[kind]
        assert decode(raw, params, kind) == art


def test_table_sizes_on_real_artifacts():
    arts = kem_artifacts(kem_params(1, 2, 1))
    params = kem_params(1, 2, 1)
    assert [len(encode(a, params)) for a in arts.values()] == [43, 108, 224]
    params = ds_params(3)
    assert [len(encode(a, params)) for a in ds_artifacts(params).values()] == [152, 300, 208]


def test_kem_private_key_field_order():
    params = kem_params(1, 2, 2)
    sk = kem_artifacts(params)[KemPrivateKey]
    raw = encode(sk, params)
    assert int.from_bytes(raw[0:4], "little") == sk.f[0]
    assert int.from_bytes(raw[12:16], "little") == sk.h[1]
    assert int.from_bytes(raw[16:25], "little") == sk.ring1.R
    assert int.from_bytes(raw[25:34], "little") == sk.ring2.R
    assert int.from_bytes(raw[34:43], "little") == sk.ring1.S
    assert int.from_bytes(raw[43:52], "little") == sk.ring2.S


@pytest.mark.parametrize("kind", [KemPublicKey, KemPrivateKey, Ciphertext])
def test_truncated_or_extended_input(kind):
    params = kem_params(1)
    raw = encode(kem_artifacts(params)[kind], params)
    with pytest.raises(LengthMismatch):
        decode(raw[:-1], params, kind)
    with pytest.raises(LengthMismatch):
        decode(raw + b"\x00", params, kind)


def test_ds_truncated_signature():
    params = ds_params(1)
    raw = encode(ds_artifacts(params)[DsSignature], params)
    with pytest.raises(LengthMismatch):
        decode(raw[:100], params, DsSignature)


def test_range_violations():
    params = kem_params(1)
    raw = bytearray(encode(kem_artifacts(params)[KemPrivateKey], params))
    zero_f0 = bytes(4) + raw[4:]
    with pytest.raises(RangeViolation):
        decode(bytes(zero_f0), params, KemPrivateKey)
    short_modulus = raw[:34] + bytes(9) + raw[43:]
    with pytest.raises(RangeViolation):
        decode(bytes(short_modulus), params, KemPrivateKey)

    params = ds_params(1)
    raw = encode(ds_artifacts(params)[DsPublicKey], params)
    # first p' entry set to 2^64 - 1 >= p
    with pytest.raises(RangeViolation):
        decode(b"\xff" * 8 + raw[8:], params, DsPublicKey)


def test_encode_rejects_mismatched_artifact():
    params = kem_params(1)
    ct = kem_artifacts(params)[Ciphertext]
    with pytest.raises(LengthMismatch):
        encode(Ciphertext(segments=ct.segments[:2]), params)
    with pytest.raises(TypeError):
        encode(object(), params)


def test_headers():
    params = kem_params(1, 2, 1)
    line = params_header(params, "pk")
    assert line == "HPPK-KEM v1 level=1 m=2 rings=1 kind=pk"
    tag, fields = parse_header(line)
    assert params_from_header(tag, fields) == params
    assert params_header(ds_params(5, 2, 32), "sig") == "HPPK-DS v1 level=5 m=2 barrett=32 kind=sig"


@pytest.mark.parametrize("line", ["", "HPPK-XYZ v1 level=1", "HPPK-KEM v2 level=1", "HPPK-KEM v1 level"])
def test_bad_headers(line):
    with pytest.raises(ParseError) as e:
        parse_header(line, 4)
    assert e.value.line == 4


def test_header_without_parameters():
    with pytest.raises(ParseError):
        params_from_header("HPPK-DS", {"level": "1", "m": "1"})
    with pytest.raises(ParseError):
        params_from_header("HPPK-KEM", {"level": "9", "m": "2", "rings": "1"})


def test_armor_round_trip():
    params = ds_params(3)
    sig = ds_artifacts(params)[DsSignature]
    text = armor(params, "sig", encode(sig, params))
    assert text.startswith("HPPK-DS v1 level=3 m=1 barrett=64 kind=sig\n")
    back, kind, data = dearmor(text)
    assert (back, kind) == (params, "sig")
    assert decode(data, back, DsSignature) == sig


def test_dearmor_errors():
    with pytest.raises(ParseError):
        dearmor("HPPK-KEM v1 level=1 m=2 rings=1 kind=pk\n")
    with pytest.raises(ParseError) as e:
        dearmor("HPPK-KEM v1 level=1 m=2 rings=1 kind=pk\nnot-hex\n")
    assert e.value.line == 2


# ==================== KAT text ====================

def kem_record(count=0):
    return KatRecord(count=count, seed=bytes(32), pk=b"\x01\x02", sk=b"\xab", ct=b"\x00\xff", ss=bytes(range(32)))


def ds_record(count=0):
    return KatRecord(count=count, seed=bytes(32), pk=b"\x01", sk=b"\x02", msg=b"", sm=b"\xde\xad")


def test_empty_kat_file():
    assert kat_write([]) == ""
    text = kat_write([], header="HPPK-KEM v1 level=1 m=2 rings=2 kind=kat")
    assert text == "# HPPK-KEM v1 level=1 m=2 rings=2 kind=kat\n\n"
    assert kat_read(text) == []
    assert kat_header(text) == "HPPK-KEM v1 level=1 m=2 rings=2 kind=kat"


def test_kat_layout():
    text = kat_write([kem_record()])
    assert text.splitlines()[:4] == ["count = 0", "seed = " + "00" * 32, "pk = 0102", "sk = AB"]
    assert "ct = 00FF" in text


def test_kat_round_trip():
    kem = [kem_record(i) for i in range(5)]
    ds = [ds_record(i) for i in range(5)]
    assert kat_read(kat_write(kem, "h")) == kem
    assert kat_read(kat_write(ds)) == ds
    assert kat_header(kat_write(ds)) is None


@pytest.mark.parametrize("text,line", [
    ("seed = 00\n", 1),
    ("count = 0\nseed = 00\npk = 01\nsk = 02\nct = 03\n", 1),
    ("count = 0\nseed = 00\nseed = 01\n", 3),
    ("count = 0\nbogus = 00\n", 2),
    ("count = 0\nseed = 0g\n", 2),
    ("count = x\n", 1),
    ("count = 0\njust text\n", 2),
    ("count = 0\nseed = 00\npk = 01\nsk = 02\nct = 03\nss = 04\nmsg = 05\n", 1),
])
def test_kat_parse_errors(text, line):
    with pytest.raises(ParseError) as e:
        kat_read(text)
    assert e.value.line == line
