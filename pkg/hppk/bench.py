"""
Timing harness for HPPK KEM and DS operations
Monotonic nanosecond clock, warmup then N timed iterations per operation,
median/mean/min reported; fresh inputs each iteration come from a seeded DRBG.
"""
import logging
import os
import statistics
import time
from typing import Callable, Dict, List, Optional, Union

import pandas as pd

from . import config
from .drbg import Drbg
from .ds import ds_keygen, sign, verify
from .errors import ParameterError
from .kem import decapsulate, encapsulate, kem_keygen
from .params import DsParams, KemParams
from .report import BenchReport, merge_reports, params_size_row

logger = logging.getLogger(__name__)

CYCLE_NOTE = "cycle counts: not exposed by this platform's Python runtime; wall-clock nanoseconds only"


def pin_to_one_core() -> Optional[int]:
    """Pin the process to its first allowed CPU where the OS supports it"""
    if not hasattr(os, "sched_setaffinity"):
        return None
    try:
        cpu = min(os.sched_getaffinity(0))
        os.sched_setaffinity(0, {cpu})
        return cpu
    except OSError:
        return None


def _time_op(fn: Callable[[], object], iters: int, warmup: int) -> Dict[str, float]:
    for _ in range(warmup):
        fn()
    samples: List[int] = []
    for _ in range(iters):
        t0 = time.perf_counter_ns()
        fn()
        samples.append(time.perf_counter_ns() - t0)
    return {
        "iters": iters,
        "median_ns": statistics.median(samples),
        "mean_ns": statistics.fmean(samples),
        "min_ns": min(samples),
    }


def _kem_ops(params: KemParams, g: Drbg) -> Dict[str, Callable[[], object]]:
    sk, pk = kem_keygen(params, g)
    ct, _ = encapsulate(pk, params, g)
    return {
        "KeyGen": lambda: kem_keygen(params, g),
        "Encaps": lambda: encapsulate(pk, params, g),
        "Decaps": lambda: decapsulate(sk, params, ct),
    }


def _ds_ops(params: DsParams, g: Drbg) -> Dict[str, Callable[[], object]]:
    sk, pk = ds_keygen(params, g)
    msg = g.random_bytes(64)
    sig = sign(sk, params, msg)
    return {
        "KeyGen": lambda: ds_keygen(params, g),
        "Sign": lambda: sign(sk, params, msg),
        "Verify": lambda: verify(pk, params, msg, sig),
    }


def run_benchmark(params: Union[KemParams, DsParams], iters: int = config.BENCH_ITERS,
                  warmup: int = config.BENCH_WARMUP, seed: Optional[bytes] = None) -> BenchReport:
    if iters < config.BENCH_MIN_ITERS or warmup < config.BENCH_MIN_WARMUP:
        raise ParameterError(f"bench needs at least {config.BENCH_MIN_ITERS} iterations "
                             f"after {config.BENCH_MIN_WARMUP} warmup runs")
    g = Drbg(seed) if seed else Drbg.from_os_entropy()
    scheme = "kem" if isinstance(params, KemParams) else "ds"
    ops = _kem_ops(params, g) if scheme == "kem" else _ds_ops(params, g)

    rows = []
    for op, fn in ops.items():
        stats = _time_op(fn, iters, warmup)
        logger.info("%s level %d %s: median %.0f ns", scheme, params.level, op, stats["median_ns"])
        rows.append({"scheme": scheme, "level": params.level, "m": params.m, "op": op, **stats})
    return BenchReport(frame=pd.DataFrame(rows), sizes=params_size_row(params), notes=[CYCLE_NOTE])


def run_suite(param_sets: List[Union[KemParams, DsParams]], iters: int = config.BENCH_ITERS,
              warmup: int = config.BENCH_WARMUP, seed: Optional[bytes] = None,
              pin: bool = False) -> BenchReport:
    notes = []
    if pin:
        cpu = pin_to_one_core()
        notes.append(f"pinned to CPU {cpu}" if cpu is not None else "CPU pinning unavailable on this platform")
    report = merge_reports([run_benchmark(p, iters, warmup, seed) for p in param_sets])
    report.notes += notes
    return report
