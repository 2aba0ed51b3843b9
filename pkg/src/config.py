import os
from dataclasses import dataclass


@dataclass(frozen=True)
class RautoBudget:
    draws: int
    max_degree: int
    slice_degree: int
    beta_indices: tuple
    search_samples: int
    coefficient_range: int
    support_size: int = 3


SCHEMA_VERSION = "taftsmash.report/1"
PRESENTATION_SCHEMA = "taftsmash.presentation/1"
ENDOMORPHISM_SCHEMA = "taftsmash.endomorphism/1"

TARGETS = ("qplane", "weyl", "affine3", "qmatrices", "polyring")
# print(f"configured targets: {TARGETS}")

# Outputs
OUTPUTS_DIR = "outputs"
REPORTS_DIR = os.path.join(OUTPUTS_DIR, "reports")
DOCS_DIR = "docs"

THREADS_ENV_VAR = "TAFTSMASH_THREADS"
HEAVY_ENV_VAR = "TAFTSMASH_HEAVY"
GITHUB_SHA_ENV = "GITHUB_SHA"

# determinant strategy
BAREISS_MAX_RANK = 30
HEAVY_MIN_RANK = 27

# entries per presentation in each PBW rewriting memo
PBW_CACHE_SIZE = 1 << 16

MODULE_ALGEBRA_DEGREE = 6
DEFAULT_SEED = 20170707

RAUTO_BUDGET = RautoBudget(
    draws=30,
    max_degree=3,
    slice_degree=4,
    beta_indices=(1, 3),
    search_samples=40,
    coefficient_range=3,
    support_size=3,
)


def default_degree(n: int) -> int:
    return 2 * n


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV_VAR, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def ensure_output_dirs() -> None:
    # print(f"ensuring output directories exist: {OUTPUTS_DIR}, {REPORTS_DIR}")
    os.makedirs(REPORTS_DIR, exist_ok=True)
    os.makedirs(OUTPUTS_DIR, exist_ok=True)
