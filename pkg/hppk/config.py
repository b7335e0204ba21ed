"""
Configuration file for the HPPK toolkit
"""
import os

# Artifact Files
ARTIFACT_VERSION = "v1"
KEM_TAG = "HPPK-KEM"
DS_TAG = "HPPK-DS"
KEM_PK_FILE = "hppk_kem.pk"   # Written by `kem keygen --out DIR`
KEM_SK_FILE = "hppk_kem.sk"
DS_PK_FILE = "hppk_ds.pk"     # Written by `ds keygen --out DIR`
DS_SK_FILE = "hppk_ds.sk"

# Randomness
SEED_BYTES = 32               # DRBG seed length; CLI seeds are 64 hex characters
SHARED_SECRET_BYTES = 32

# Logging
LOG_LEVEL = os.getenv("HPPK_LOG_LEVEL", "WARNING")

# Benchmark Settings
BENCH_ITERS = int(os.getenv("HPPK_BENCH_ITERS", "1000"))
BENCH_WARMUP = int(os.getenv("HPPK_BENCH_WARMUP", "10"))
BENCH_MIN_ITERS = 100
BENCH_MIN_WARMUP = 10
BENCH_CSV_COLUMNS = ["scheme", "level", "m", "op", "iters", "median_ns", "mean_ns", "min_ns"]

# Toy Attack Limits
TOY_MIN_L = 10
TOY_MAX_L = 22
TOY_MIN_B = 2
TOY_MAX_B = 10
TOY_MAX_SEARCH_BITS = 26      # Refuse searches larger than 2^26 candidates
TOY_DEFAULT_BARRETT = 64      # Toy K = L + 64, the production Barrett width
CENSUS_MAX_P = 64
ATTACK_CHUNK = 1 << 15        # S values per vectorized search chunk
ATTACK_WORKERS = int(os.getenv("HPPK_ATTACK_WORKERS", "1"))
