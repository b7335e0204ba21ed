import dataclasses

import pytest

from hppk.bigmod import mod_inverse
from hppk.drbg import Drbg
from hppk.errors import DecapsulationFailure, LengthMismatch
from hppk.kem import (Ciphertext, decapsulate, decapsulation_ratio, encapsulate, encapsulate_segment,
                      kem_key_material, kem_keygen)
from hppk.params import kem_params
from hppk.poly import evaluate, monomials, product_coefficients

SEED = bytes.fromhex("5e" * 32)
CONFIGS = [(level, m, rings) for level in (1, 3, 5) for m in (2, 3) for rings in (1, 2)]


def beta_at(c, x, u, p):
    return sum(u[j] * evaluate([row[j] for row in c], x, p) for j in range(len(u))) % p


@pytest.mark.parametrize("level,m,rings", CONFIGS)
def test_round_trip(level, m, rings):
    params = kem_params(level, m, rings)
    g = Drbg(SEED)
    for _ in range(10):
        sk, pk = kem_keygen(params, g)
        ct, ss = encapsulate(pk, params, g)
        assert len(ss) == 32
        assert len(ct.segments) == params.num_segments
        assert decapsulate(sk, params, ct) == ss


@pytest.mark.slow
@pytest.mark.parametrize("level,m,rings", CONFIGS)
def test_round_trip_thousand_cycles(level, m, rings):
    params = kem_params(level, m, rings)
    g = Drbg(bytes([level, m, rings]) + bytes(29))
    mismatches = 0
    for _ in range(1000):
        sk, pk = kem_keygen(params, g)
        ct, ss = encapsulate(pk, params, g)
        mismatches += decapsulate(sk, params, ct) != ss
    assert mismatches == 0


def test_keygen_is_deterministic():
    params = kem_params(1, 2, 1)
    assert kem_keygen(params, Drbg(SEED)) == kem_keygen(params, Drbg(SEED))
    assert kem_keygen(params, Drbg(SEED)) != kem_keygen(params, Drbg(bytes(32)))


def test_key_material_matches_keygen_stream():
    params = kem_params(3, 3, 2)
    material = kem_key_material(params, Drbg(SEED))
    assert (material.sk, material.pk) == kem_keygen(params, Drbg(SEED))


@pytest.mark.parametrize("level", [1, 3, 5])
def test_public_key_decrypts_to_convolution(level):
    params = kem_params(level, 2)
    material = kem_key_material(params, Drbg(SEED))
    sk, pk = material.sk, material.pk
    assert material.p_plain == product_coefficients(sk.f, material.c, params.p)
    assert material.q_plain == product_coefficients(sk.h, material.c, params.p)
    for i in range(params.rows):
        for j in range(params.m):
            assert sk.ring1.decrypt(pk.P[i][j]) == material.p_plain[i][j] < params.p
            assert sk.ring2.decrypt(pk.Q[i][j]) == material.q_plain[i][j] < params.p


def test_private_polys_are_not_proportional():
    params = kem_params(1)
    g = Drbg(SEED)
    for _ in range(50):
        sk, _ = kem_keygen(params, g)
        (f0, f1), (h0, h1) = sk.f, sk.h
        assert (f1 * h0 - f0 * h1) % params.p
        assert all(1 <= v < params.p for v in (f0, f1, h0, h1))


def test_one_ring_shares_modulus():
    sk, _ = kem_keygen(kem_params(1, 2, 1), Drbg(SEED))
    assert sk.ring1.S == sk.ring2.S
    assert sk.ring1.S.bit_length() == 72
    sk, _ = kem_keygen(kem_params(1, 2, 2), Drbg(SEED))
    assert sk.ring2.S.bit_length() == 72


def test_forced_zero_noise():
    params = kem_params(1)
    _, pk = kem_keygen(params, Drbg(SEED))
    assert encapsulate_segment(pk, params, 12345, [0, 0]) == (0, 0)


def test_forced_zero_secret_uses_constant_row():
    params = kem_params(1)
    _, pk = kem_keygen(params, Drbg(SEED))
    u = [17, 2**31 + 5]
    Pbar, Qbar = encapsulate_segment(pk, params, 0, u)
    assert Pbar == sum(pk.P[0][j] * u[j] for j in range(2))
    assert Qbar == sum(pk.Q[0][j] * u[j] for j in range(2))


@pytest.mark.parametrize("level,rings", [(1, 1), (3, 2), (5, 2)])
def test_unwrapped_values_are_beta_times_f_and_h(level, rings):
    params = kem_params(level, 3, rings)
    g = Drbg(SEED)
    material = kem_key_material(params, g)
    sk, p = material.sk, params.p
    for _ in range(200):
        x = g.uniform_below(p)
        u = [g.uniform_below(p) for _ in range(params.m)]
        Pbar, Qbar = encapsulate_segment(material.pk, params, x, u)
        w = monomials(x, u, params.rows, p)
        plain = sum(material.p_plain[i][j] * w[i][j] for i in range(params.rows) for j in range(params.m))
        # exact integer evaluation stays below S1, so decryption loses nothing
        assert plain < sk.ring1.S
        assert sk.ring1.decrypt(Pbar) == plain
        beta = beta_at(material.c, x, u, p)
        assert sk.ring1.decrypt(Pbar) % p == beta * evaluate(sk.f, x, p) % p
        assert sk.ring2.decrypt(Qbar) % p == beta * evaluate(sk.h, x, p) % p


@pytest.mark.parametrize("level", [1, 3, 5])
def test_noise_cancels_in_ratio(level):
    params = kem_params(level, 2)
    g = Drbg(SEED)
    sk, pk = kem_keygen(params, g)
    p = params.p
    x = g.uniform_below(p)
    expected = evaluate(sk.f, x, p) * mod_inverse(evaluate(sk.h, x, p), p) % p
    for _ in range(100):
        u = [g.uniform_below(p) for _ in range(params.m)]
        assert decapsulation_ratio(sk, params, *encapsulate_segment(pk, params, x, u)) == expected


def test_root_denominator_identity():
    params = kem_params(1)
    g = Drbg(SEED)
    sk, pk = kem_keygen(params, g)
    p = params.p
    (f0, f1), (h0, h1) = sk.f, sk.h
    for _ in range(100):
        x = g.uniform_below(p)
        u = [g.uniform_below(p) for _ in range(params.m)]
        k = decapsulation_ratio(sk, params, *encapsulate_segment(pk, params, x, u))
        hx = evaluate(sk.h, x, p)
        assert (f1 - k * h1) % p == (f1 * h0 - f0 * h1) * mod_inverse(hx, p) % p


def test_tampered_ciphertext_fails_cleanly():
    params = kem_params(1)
    g = Drbg(SEED)
    sk, pk = kem_keygen(params, g)
    ct, _ = encapsulate(pk, params, g)
    (Pbar, _), *rest = ct.segments
    tampered = Ciphertext(segments=((Pbar, 0), *rest))
    with pytest.raises(DecapsulationFailure):
        decapsulate(sk, params, tampered)


def test_other_tampering_gives_wrong_secret():
    params = kem_params(1)
    g = Drbg(SEED)
    sk, pk = kem_keygen(params, g)
    ct, ss = encapsulate(pk, params, g)
    (Pbar, Qbar), *rest = ct.segments
    tampered = dataclasses.replace(ct, segments=((Pbar + 1, Qbar), *rest))
    try:
        assert decapsulate(sk, params, tampered) != ss
    except DecapsulationFailure:
        pass


def test_segment_count_checked():
    params = kem_params(1)
    g = Drbg(SEED)
    sk, pk = kem_keygen(params, g)
    ct, _ = encapsulate(pk, params, g)
    with pytest.raises(LengthMismatch):
        decapsulate(sk, params, Ciphertext(segments=ct.segments[:-1]))


def test_secret_is_little_endian_roots():
    params = kem_params(3)
    g = Drbg(SEED)
    sk, pk = kem_keygen(params, g)
    ct, ss = encapsulate(pk, params, g)
    # level III: six 6-byte roots, truncated to 32 bytes
    p = params.p
    roots = []
    for Pbar, Qbar in ct.segments:
        k = decapsulation_ratio(sk, params, Pbar, Qbar)
        (f0, f1), (h0, h1) = sk.f, sk.h
        roots.append((k * h0 - f0) * mod_inverse((f1 - k * h1) % p, p) % p)
    assert ss == b"".join(x.to_bytes(6, "little") for x in roots)[:32]


def test_pipeline_is_reproducible():
    params = kem_params(5, 3, 1)

    def run():
        g = Drbg(SEED)
        sk, pk = kem_keygen(params, g)
        return sk, pk, encapsulate(pk, params, g)

    assert run() == run()
