"""
Configuration constants and the run configuration for qdual.
Defaults live here as module-level constants; `load_config` layers the
environment, an optional JSON file and explicit overrides on top of them.
"""
import json
import os
from dataclasses import dataclass, fields, replace
from typing import Optional

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Variables every expression may mention, in a fixed order
VARIABLES = ("q", "B", "C", "D", "z")

# Identity testing
DEFAULT_PRIME = 2**62 - 57
DEFAULT_TRIALS = 3
GRID_BUDGET = 250_000
RANDOM_POINT_BITS = 24
RESAMPLE_LIMIT = 50

# Series truncation
CUTOFF_BUDGET = 2**14
DEFAULT_M_Q = 20
DEFAULT_M_Z = 8

# Sweep budgets
GRID_K_MAX = 3
GRID_N_MAX = 2
MODP_K_MAX = 4
MODP_N_MAX = 3

# Classical limit
CLASSICAL_STEPS = 2**12
CLASSICAL_TOLERANCE = 1e-3
CLASSICAL_DUALITY_TOLERANCE = 1e-6

MODES = ("grid", "random-exact", "modp")


@dataclass(frozen=True)
class Config:
    """
    Settings shared by the verifier suites and the command line.

    Attributes:
        mode: identity-testing backend, one of MODES.
        seed: seed for every random choice, so reports are reproducible.
        prime: modulus for the modp backend.
        trials: random points per comparison in the random backends.
        grid_budget: largest grid the deterministic backend may evaluate.
        m_q, m_z: truncation orders for series computations.
        k_max, n_max: sweep budgets (word length, N).
        threads: worker threads for suites.
        output: file the JSON report is written to (stdout when None).
        db_path: sqlite ledger to record runs in (no ledger when None).
        spot_check: recompute every stabilized series once more at a doubled cutoff.
    """
    mode: str = "grid"
    seed: int = 0
    prime: int = DEFAULT_PRIME
    trials: int = DEFAULT_TRIALS
    grid_budget: int = GRID_BUDGET
    m_q: int = DEFAULT_M_Q
    m_z: int = DEFAULT_M_Z
    k_max: int = GRID_K_MAX
    n_max: int = GRID_N_MAX
    threads: int = 1
    output: Optional[str] = None
    db_path: Optional[str] = None
    spot_check: bool = False

    def as_dict(self) -> dict:
        """Return the report-facing subset of the configuration."""
        return {
            "mode": self.mode,
            "seed": self.seed,
            "prime": str(self.prime),
            "budgets": {
                "grid": self.grid_budget,
                "k_max": self.k_max,
                "n_max": self.n_max,
                "m_q": self.m_q,
                "m_z": self.m_z,
            },
        }


def _environment_overrides() -> dict:
    """Collect QDUAL_* environment variables that map onto Config fields."""
    overrides = {}
    threads = os.getenv("QDUAL_THREADS")
    if threads:
        overrides["threads"] = max(1, int(threads))
    seed = os.getenv("QDUAL_SEED")
    if seed:
        overrides["seed"] = int(seed)
    db_path = os.getenv("QDUAL_DB_PATH")
    if db_path:
        overrides["db_path"] = db_path
    return overrides


def load_config(path: Optional[str] = None, **overrides) -> Config:
    """
    Build a Config from defaults, the environment, an optional JSON file and overrides.

    Args:
        path (str): Optional JSON file whose keys are Config field names.
        **overrides: Explicit values (typically command-line flags); None values are ignored.

    Returns:
        Config: The merged configuration.

    Raises:
        ValueError: If the file has unknown keys, the mode is not recognised or a
            budget is out of range.
    """
    config = replace(Config(), **_environment_overrides())
    known = {f.name for f in fields(Config)}
    data = {}
    if path:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"Unknown config keys: {sorted(unknown)}")
        config = replace(config, **data)
    explicit = {key: value for key, value in overrides.items() if value is not None}
    unknown = set(explicit) - known
    if unknown:
        raise ValueError(f"Unknown config keys: {sorted(unknown)}")
    config = replace(config, **explicit)
    if config.mode not in MODES:
        raise ValueError(f"Invalid mode: {config.mode}")
    if config.mode == "modp":
        # unset sweep budgets follow the modp defaults
        budgets = {"k_max": MODP_K_MAX, "n_max": MODP_N_MAX}
        config = replace(config, **{key: value for key, value in budgets.items()
                                    if key not in data and key not in explicit})
    for name in ("trials", "grid_budget", "m_q"):
        if getattr(config, name) < 1:
            raise ValueError(f"{name} must be positive, got {getattr(config, name)}")
    if config.m_z < 0:
        raise ValueError(f"m_z must be non-negative, got {config.m_z}")
    if config.prime < 3:
        raise ValueError(f"prime must be an odd prime, got {config.prime}")
    threads_cap = os.getenv("QDUAL_THREADS")
    if threads_cap:
        config = replace(config, threads=min(config.threads, max(1, int(threads_cap))))
    return config
