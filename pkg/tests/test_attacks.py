import dataclasses
import time

import pytest

from hppk.attacks import ciphertext_census, ds_full_recovery, ds_ring_recovery, kem_ring_recovery
from hppk.drbg import Drbg
from hppk.ds import ds_key_material
from hppk.errors import AttackRefused, NotFound
from hppk.kem import encapsulate_segment, kem_key_material
from hppk.params import toy_params


def seed(i: int) -> bytes:
    return i.to_bytes(4, "little") + bytes(28)


# ==================== KEM ring search ====================

@pytest.mark.parametrize("L", [10, 12])
def test_kem_ring_recovery_includes_true_ring(L):
    toy = toy_params(13, L)
    material = kem_key_material(toy.kem_params(), Drbg(seed(L)))
    result = kem_ring_recovery(material.pk, toy)
    assert (material.sk.ring1.R, material.sk.ring1.S) in result
    assert result.tried <= 2 ** (2 * L - 1)
    assert result.candidates == sorted(result.candidates, key=lambda rs: (rs[1], rs[0]))


def test_kem_ring_recovery_q_side_and_workers():
    toy = toy_params(7, 10)
    material = kem_key_material(toy.kem_params(), Drbg(seed(1)))
    serial = kem_ring_recovery(material.pk, toy, side="Q", workers=1)
    parallel = kem_ring_recovery(material.pk, toy, side="Q", workers=4)
    assert serial == parallel
    assert (material.sk.ring2.R, material.sk.ring2.S) in serial


@pytest.mark.slow
@pytest.mark.parametrize("L", [10, 12])
def test_kem_ring_recovery_twenty_keys(L):
    toy = toy_params(13, L)
    for i in range(20):
        material = kem_key_material(toy.kem_params(), Drbg(seed(100 + i)))
        assert (material.sk.ring1.R, material.sk.ring1.S) in kem_ring_recovery(material.pk, toy)


def test_kem_ring_recovery_rejects_unknown_side():
    toy = toy_params(13, 10)
    material = kem_key_material(toy.kem_params(), Drbg(seed(0)))
    with pytest.raises(ValueError):
        kem_ring_recovery(material.pk, toy, side="R")


def test_kem_ring_recovery_refuses_large_search():
    toy = toy_params(13, 14)
    material = kem_key_material(toy.kem_params(), Drbg(seed(0)))
    with pytest.raises(AttackRefused):
        kem_ring_recovery(material.pk, toy)


# ==================== DS ring search ====================

@pytest.mark.parametrize("L", [12, 16, 20])
def test_ds_ring_recovery(L):
    toy = toy_params(13, L, m=1)
    material = ds_key_material(toy.ds_params(), Drbg(seed(L)))
    result = ds_ring_recovery(material.pk, toy)
    assert result.S == material.sk.ring1.S
    assert result.recovered == material.P
    assert result.iterations <= 2 ** (L - 1)


def test_ds_full_recovery():
    toy = toy_params(13, 16, m=2)
    material = ds_key_material(toy.ds_params(), Drbg(seed(3)))
    first, second, total = ds_full_recovery(material.pk, toy, workers=2)
    assert (first.S, second.S) == (material.sk.ring1.S, material.sk.ring2.S)
    assert second.recovered == material.Q
    assert total == first.iterations + second.iterations <= 2**16


@pytest.mark.slow
@pytest.mark.parametrize("L", [12, 16, 20])
def test_ds_ring_recovery_twenty_keys(L):
    toy = toy_params(13, L, m=1)
    for i in range(20):
        material = ds_key_material(toy.ds_params(), Drbg(seed(200 + i)))
        result = ds_ring_recovery(material.pk, toy)
        assert result.S == material.sk.ring1.S and result.iterations <= 2 ** (L - 1)


def test_ds_ring_recovery_wide_barrett_keys():
    # with only 16 Barrett bits a smaller modulus reproduces every mu of these keys
    toy = toy_params(13, 20, m=1)
    assert toy.K == 84
    for i in (0, 4, 5):
        material = ds_key_material(toy.ds_params(), Drbg(seed(200 + i)))
        result = ds_ring_recovery(material.pk, toy)
        assert result.S == material.sk.ring1.S
        assert result.recovered == material.P


def test_ds_ring_recovery_rejects_unknown_side():
    toy = toy_params(13, 12, m=1)
    material = ds_key_material(toy.ds_params(), Drbg(seed(0)))
    with pytest.raises(ValueError):
        ds_ring_recovery(material.pk, toy, side="P")


def test_ds_ring_recovery_not_found():
    toy = toy_params(13, 12, m=1)
    material = ds_key_material(toy.ds_params(), Drbg(seed(5)))
    # nonzero constants below 2^(K - L) cannot come from any 12-bit modulus
    bogus = dataclasses.replace(material.pk, mu=((2**28 - 1,), (2**28 - 2,), (1,)))
    with pytest.raises(NotFound):
        ds_ring_recovery(bogus, toy)


# ==================== Growth with L ====================

def test_attacks_at_ten_bits_are_fast():
    toy = toy_params(13, 10, m=1)
    start = time.perf_counter()
    material = ds_key_material(toy.ds_params(), Drbg(seed(10)))
    first, second, _ = ds_full_recovery(material.pk, toy)
    assert (first.S, second.S) == (material.sk.ring1.S, material.sk.ring2.S)
    assert time.perf_counter() - start < 10

    start = time.perf_counter()
    material = kem_key_material(toy.kem_params(), Drbg(seed(10)))
    assert (material.sk.ring1.R, material.sk.ring1.S) in kem_ring_recovery(material.pk, toy)
    assert time.perf_counter() - start < 10


@pytest.mark.slow
def test_search_work_grows_with_L():
    """KEM ring search stops at L = 12: L = 14 already exceeds the toy search cap"""
    start = time.perf_counter()
    ds_work = []
    for L in (10, 12, 14, 16):
        toy = toy_params(13, L, m=1)
        total = 0
        for i in range(10):
            material = ds_key_material(toy.ds_params(), Drbg(seed(400 + i)))
            first, second, work = ds_full_recovery(material.pk, toy)
            assert (first.S, second.S) == (material.sk.ring1.S, material.sk.ring2.S)
            assert work <= 2**L
            total += work
        ds_work.append(total)
    assert ds_work == sorted(ds_work) and len(set(ds_work)) == 4

    kem_work = []
    for L in (10, 12):
        toy = toy_params(13, L)
        material = kem_key_material(toy.kem_params(), Drbg(seed(500 + L)))
        result = kem_ring_recovery(material.pk, toy)
        assert result.tried <= 2 ** (2 * L - 1)
        kem_work.append(result.tried)
    assert kem_work[0] < kem_work[1]
    assert time.perf_counter() - start < 300


# ==================== Ciphertext census ====================

def census_trial(toy, i):
    g = Drbg(seed(300 + i))
    material = kem_key_material(toy.kem_params(), g)
    x = g.uniform_below(toy.p)
    u = [g.uniform_range(1, toy.p) for _ in range(toy.m)]
    segment = encapsulate_segment(material.pk, toy.kem_params(), x, u)
    rings = (material.sk.ring1, material.sk.ring2)
    return material.pk, segment, rings


@pytest.mark.parametrize("m", [1, 2])
def test_census_counts_true_tuple(m):
    toy = toy_params(31, 14, m=m)
    pk, segment, rings = census_trial(toy, m)
    exact = ciphertext_census(pk, segment, toy)
    field = ciphertext_census(pk, segment, toy, rings=rings)
    assert exact.tuples_tried == field.tuples_tried == 31 ** (m + 1)
    assert exact.count >= 1 and field.count >= exact.count
    assert (exact.mode, field.mode) == ("integer", "field")


@pytest.mark.slow
def test_census_multiplicity_by_noise_width():
    multiple = unique = 0
    for i in range(100):
        toy = toy_params(31, 14, m=2)
        pk, segment, rings = census_trial(toy, i)
        multiple += ciphertext_census(pk, segment, toy, rings=rings).count > 1

        toy = toy_params(31, 14, m=1)
        pk, segment, rings = census_trial(toy, 1000 + i)
        unique += ciphertext_census(pk, segment, toy, rings=rings).count == 1
    assert multiple >= 90
    assert unique >= 90


def test_census_refuses_large_field():
    toy = toy_params(67, 16, m=1)
    pk, segment, _ = census_trial(toy, 0)
    with pytest.raises(AttackRefused):
        ciphertext_census(pk, segment, toy)
