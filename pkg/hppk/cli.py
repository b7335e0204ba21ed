"""
Command-line entry point: python -m hppk <command> ...
Every command is scriptable: no prompts, all randomness seedable with --seed.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from . import config
from .attacks import ciphertext_census, ds_full_recovery, kem_ring_recovery
from .bench import run_suite
from .codec import (armor, decode, dearmor, encode, kat_header, kat_read, kat_write, params_from_header,
                    parse_header)
from .drbg import Drbg
from .ds import DsPrivateKey, DsPublicKey, DsSignature, ds_key_material, ds_keygen, sign, verify
from .errors import HppkError, ParseError
from .kat import check_kat, generate_kat, kat_file_header
from .kem import (Ciphertext, KemPrivateKey, KemPublicKey, decapsulate, encapsulate, encapsulate_segment,
                  kem_key_material, kem_keygen)
from .params import DsParams, KemParams, ds_params, kem_params, toy_params
from .report import size_table

logger = logging.getLogger(__name__)


class ArtifactError(HppkError, ValueError):
    """Raised when an artifact file holds the wrong kind of object"""


# ==================== Helpers ====================

def _drbg(seed_hex: Optional[str]) -> Drbg:
    return Drbg.from_hex(seed_hex) if seed_hex else Drbg.from_os_entropy()


def _write_artifact(path: Path, params, kind: str, data: bytes):
    path.write_text(armor(params, kind, data))


def _read_artifact(path: str, kind: str, cls: type, scheme: type):
    params, found, data = dearmor(Path(path).read_text())
    if not isinstance(params, scheme):
        raise ArtifactError(f"{path}: artifact belongs to the other scheme")
    if found != kind:
        raise ArtifactError(f"{path}: expected a {kind} artifact, found {found or 'none'}")
    return params, decode(data, params, cls)


def _status(message: str):
    print(message)


# ==================== KEM ====================

def cmd_kem_keygen(args) -> int:
    params = kem_params(args.level, args.m, args.rings)
    sk, pk = kem_keygen(params, _drbg(args.seed))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _write_artifact(out / config.KEM_PK_FILE, params, "pk", encode(pk, params))
    _write_artifact(out / config.KEM_SK_FILE, params, "sk", encode(sk, params))
    _status(f"✅ {params.label()} key pair written to {out}")
    return 0


def cmd_kem_encaps(args) -> int:
    params, pk = _read_artifact(args.pk, "pk", KemPublicKey, KemParams)
    ct, ss = encapsulate(pk, params, _drbg(args.seed))
    _write_artifact(Path(args.ct), params, "ct", encode(ct, params))
    _write_artifact(Path(args.ss), params, "ss", ss)
    _status(f"✅ Ciphertext written to {args.ct}")
    return 0


def cmd_kem_decaps(args) -> int:
    params, sk = _read_artifact(args.sk, "sk", KemPrivateKey, KemParams)
    ct_params, ct = _read_artifact(args.ct, "ct", Ciphertext, KemParams)
    if ct_params != params:
        raise ArtifactError("ciphertext and private key use different parameter sets")
    ss = decapsulate(sk, params, ct)
    _write_artifact(Path(args.ss), params, "ss", ss)
    _status(f"✅ Shared secret written to {args.ss}")
    return 0


# ==================== DS ====================

def cmd_ds_keygen(args) -> int:
    params = ds_params(args.level, args.m, args.barrett)
    sk, pk = ds_keygen(params, _drbg(args.seed))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _write_artifact(out / config.DS_PK_FILE, params, "pk", encode(pk, params))
    _write_artifact(out / config.DS_SK_FILE, params, "sk", encode(sk, params))
    _status(f"✅ {params.label()} key pair written to {out}")
    return 0


def cmd_ds_sign(args) -> int:
    params, sk = _read_artifact(args.sk, "sk", DsPrivateKey, DsParams)
    sig = sign(sk, params, Path(args.msg).read_bytes())
    _write_artifact(Path(args.sig), params, "sig", encode(sig, params))
    _status(f"✅ Signature written to {args.sig}")
    return 0


def cmd_ds_verify(args) -> int:
    params, pk = _read_artifact(args.pk, "pk", DsPublicKey, DsParams)
    sig_params, sig = _read_artifact(args.sig, "sig", DsSignature, DsParams)
    if sig_params != params:
        raise ArtifactError("signature and public key use different parameter sets")
    if verify(pk, params, Path(args.msg).read_bytes(), sig):
        _status("✅ Signature accepted")
        return 0
    return 1


# ==================== KAT ====================

def cmd_kat_gen(args) -> int:
    if args.scheme == "kem":
        params = kem_params(args.level, args.m or 2, args.rings)
    else:
        params = ds_params(args.level, args.m or 1, args.barrett)
    records = generate_kat(params, args.count, bytes.fromhex(args.seed))
    Path(args.out).write_text(kat_write(records, kat_file_header(params)))
    _status(f"✅ {len(records)} KAT records written to {args.out}")
    return 0


def cmd_kat_check(args) -> int:
    text = Path(args.infile).read_text()
    header = kat_header(text)
    if header is None:
        raise ParseError("KAT file has no parameter header", 1)
    params = params_from_header(*parse_header(header))
    failed = check_kat(params, kat_read(text))
    if failed:
        print(f"❌ KAT mismatch in records {', '.join(map(str, failed))}", file=sys.stderr)
        return 1
    _status(f"✅ KAT file {args.infile} regenerates byte-identically")
    return 0


# ==================== Bench / sizes ====================

def cmd_bench(args) -> int:
    if args.scheme == "kem":
        param_sets = [kem_params(level, args.m or 2, args.rings) for level in args.level]
    else:
        param_sets = [ds_params(level, args.m or 1, args.barrett) for level in args.level]
    seed = bytes.fromhex(args.seed) if args.seed else None
    report = run_suite(param_sets, args.iters, args.warmup, seed, pin=args.pin)
    print(report.to_text())
    if args.csv:
        report.to_csv(args.csv)
        _status(f"✅ CSV written to {args.csv}")
    if args.chart:
        report.to_chart(args.chart)
        _status(f"✅ Chart written to {args.chart}")
    return 0


def cmd_sizes(args) -> int:
    for scheme in args.scheme:
        print(size_table(scheme).to_string(index=False))
        print()
    return 0


# ==================== Attacks ====================

def cmd_attack_kem_ring(args) -> int:
    toy = toy_params(args.toy_p, args.toy_l, args.m)
    params = toy.kem_params(args.rings)
    material = kem_key_material(params, _drbg(args.seed))
    result = kem_ring_recovery(material.pk, toy, workers=args.workers)
    truth = (material.sk.ring1.R, material.sk.ring1.S)
    print(f"candidates: {len(result.candidates)}")
    for R, S in result.candidates[:args.show]:
        print(f"  R={R} S={S}{'  <- true ring' if (R, S) == truth else ''}")
    print(f"coprime pairs tried: {result.tried} (bound 2^{2 * toy.L - 1} = {1 << (2 * toy.L - 1)})")
    print(f"true ring recovered: {'yes' if truth in result else 'no'}")
    return 0


def cmd_attack_ds_ring(args) -> int:
    toy = toy_params(args.toy_p, args.toy_l, args.m, args.barrett)
    material = ds_key_material(toy.ds_params(), _drbg(args.seed))
    first, second, total = ds_full_recovery(material.pk, toy, workers=args.workers)
    for name, res, ring, matrix in (("S1", first, material.sk.ring1, material.P),
                                    ("S2", second, material.sk.ring2, material.Q)):
        ok = res.S == ring.S and res.recovered == matrix
        print(f"{name}: found {res.S} after {res.iterations} iterations "
              f"(true {ring.S}, coefficients {'match' if ok else 'differ'})")
    print(f"total iterations: {total} (bound 2^{toy.L} = {1 << toy.L})")
    return 0


def cmd_attack_census(args) -> int:
    toy = toy_params(args.toy_p, args.toy_l, args.m)
    params = toy.kem_params(2)
    g = _drbg(args.seed)
    material = kem_key_material(params, g)
    x = g.uniform_below(toy.p)
    u = [g.uniform_below(toy.p) for _ in range(toy.m)]
    segment = encapsulate_segment(material.pk, params, x, u)
    exact = ciphertext_census(material.pk, segment, toy)
    print(f"secret x={x} noise u={u}")
    print(f"tuples searched: {exact.tuples_tried}")
    print(f"consistent tuples (integer match): {exact.count}")
    if toy.decryptable:
        field = ciphertext_census(material.pk, segment, toy, rings=(material.sk.ring1, material.sk.ring2))
        print(f"consistent tuples (F_p equations behind the rings): {field.count}")
    else:
        print("⚠️ hidden ring too small for the field census at these parameters")
    return 0


# ==================== Parser ====================

def _add_seed(p: argparse.ArgumentParser):
    p.add_argument("--seed", metavar="HEX64", help="32-byte seed as 64 hex characters (default: OS entropy)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hppk", description="HPPK key encapsulation and signatures")
    sub = parser.add_subparsers(dest="command", required=True)

    # kem
    kem = sub.add_parser("kem", help="key encapsulation").add_subparsers(dest="action", required=True)
    p = kem.add_parser("keygen")
    p.add_argument("--level", type=int, choices=(1, 3, 5), required=True)
    p.add_argument("--m", type=int, choices=(2, 3), default=2)
    p.add_argument("--rings", type=int, choices=(1, 2), default=2)
    _add_seed(p)
    p.add_argument("--out", required=True, metavar="DIR")
    p.set_defaults(func=cmd_kem_keygen)

    p = kem.add_parser("encaps")
    p.add_argument("--pk", required=True)
    _add_seed(p)
    p.add_argument("--ct", required=True)
    p.add_argument("--ss", required=True)
    p.set_defaults(func=cmd_kem_encaps)

    p = kem.add_parser("decaps")
    p.add_argument("--sk", required=True)
    p.add_argument("--ct", required=True)
    p.add_argument("--ss", required=True)
    p.set_defaults(func=cmd_kem_decaps)

    # ds
    ds = sub.add_parser("ds", help="digital signatures").add_subparsers(dest="action", required=True)
    p = ds.add_parser("keygen")
    p.add_argument("--level", type=int, choices=(1, 3, 5), required=True)
    p.add_argument("--m", type=int, choices=(1, 2), default=1)
    p.add_argument("--barrett", type=int, choices=(32, 64), default=64)
    _add_seed(p)
    p.add_argument("--out", required=True, metavar="DIR")
    p.set_defaults(func=cmd_ds_keygen)

    p = ds.add_parser("sign")
    p.add_argument("--sk", required=True)
    p.add_argument("--msg", required=True)
    p.add_argument("--sig", required=True)
    p.set_defaults(func=cmd_ds_sign)

    p = ds.add_parser("verify")
    p.add_argument("--pk", required=True)
    p.add_argument("--msg", required=True)
    p.add_argument("--sig", required=True)
    p.set_defaults(func=cmd_ds_verify)

    # kat
    kat = sub.add_parser("kat", help="known-answer tests").add_subparsers(dest="action", required=True)
    p = kat.add_parser("gen")
    p.add_argument("--scheme", choices=("kem", "ds"), required=True)
    p.add_argument("--level", type=int, choices=(1, 3, 5), required=True)
    p.add_argument("--m", type=int, choices=(1, 2, 3))
    p.add_argument("--rings", type=int, choices=(1, 2), default=2)
    p.add_argument("--barrett", type=int, choices=(32, 64), default=64)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", metavar="HEX64", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_kat_gen)

    p = kat.add_parser("check")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=cmd_kat_check)

    # bench
    p = sub.add_parser("bench", help="time every operation")
    p.add_argument("--scheme", choices=("kem", "ds"), required=True)
    p.add_argument("--level", type=int, choices=(1, 3, 5), nargs="+", default=[1, 3, 5])
    p.add_argument("--m", type=int, choices=(1, 2, 3))
    p.add_argument("--rings", type=int, choices=(1, 2), default=1)
    p.add_argument("--barrett", type=int, choices=(32, 64), default=64)
    p.add_argument("--iters", type=int, default=config.BENCH_ITERS)
    p.add_argument("--warmup", type=int, default=config.BENCH_WARMUP)
    _add_seed(p)
    p.add_argument("--csv", metavar="FILE")
    p.add_argument("--chart", metavar="FILE", help="write a plotly HTML chart")
    p.add_argument("--pin", action="store_true", help="pin to one CPU where supported")
    p.set_defaults(func=cmd_bench)

    # sizes
    p = sub.add_parser("sizes", help="print encoded sizes for every parameter set")
    p.add_argument("--scheme", choices=("kem", "ds"), nargs="+", default=["kem", "ds"])
    p.set_defaults(func=cmd_sizes)

    # attack
    attack = sub.add_parser("attack", help="toy-scale attacks").add_subparsers(dest="action", required=True)
    for name, func in (("kem-ring", cmd_attack_kem_ring), ("ds-ring", cmd_attack_ds_ring),
                       ("census", cmd_attack_census)):
        p = attack.add_parser(name)
        p.add_argument("--toy-l", type=int, required=True)
        p.add_argument("--toy-p", type=int, required=True)
        p.add_argument("--m", type=int, default=2)
        _add_seed(p)
        p.add_argument("--workers", type=int, default=config.ATTACK_WORKERS)
        p.set_defaults(func=func)
        if name == "kem-ring":
            p.add_argument("--rings", type=int, choices=(1, 2), default=2)
            p.add_argument("--show", type=int, default=10, help="candidates to list")
        if name == "ds-ring":
            p.add_argument("--barrett", type=int, default=config.TOY_DEFAULT_BARRETT)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=config.LOG_LEVEL, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (HppkError, ValueError, OSError) as e:
        print(f"❌ {type(e).__name__}: {e}".splitlines()[0], file=sys.stderr)
        return 2
