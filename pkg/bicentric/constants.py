"""
Shared constants and tolerance configuration.

Every numeric threshold used by the library lives here so the CLI, the
tests and the library agree on one set of defaults.
"""

import math
import os
from dataclasses import dataclass
from typing import Mapping, Optional

GENERATOR_VERSION = "bicentric 1.0.0"
SCHEMA_VERSION = 1

# Environment variable consulted by the CLI for the verification tolerance
ENV_TOL = "BICENT_TOL"

# Degeneracy thresholds (relative to the local length scale)
EPS_DEGENERATE = 1e-12
EPS_TANGENCY = 1e-9
EPS_PARALLEL = 1e-12

# Poncelet closure
CLOSURE_TOL = 1e-9            # positional, in units of R_K
BISECTION_WIDTH = 1e-14       # bracket width, in units of R_K
BISECTION_MAX_ITER = 200
PORISM_AGREEMENT = 1e-6       # max spread of sampled angular defects (rad)
# Values closer than this are treated as equal by the monotonicity check
MONOTONE_NOISE = 1e-12

# Invariant checks on polygons and excircles, in units of R_K
VERTEX_ON_K_TOL = 1e-10
SIDE_TANGENCY_TOL = 1e-10
EXCIRCLE_TANGENCY_TOL = 1e-9

DEFAULT_VERIFY_TOL = 1e-9
DEFAULT_WIDTH_PX = 800

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Tolerances:
    """Tolerance bundle handed through the CLI pipeline"""

    closure_tol: float = CLOSURE_TOL
    verify_tol: float = DEFAULT_VERIFY_TOL

    @classmethod
    def resolve(cls, flag_tol: Optional[float] = None,
                environ: Optional[Mapping[str, str]] = None) -> "Tolerances":
        """Pick the verification tolerance: flag > BICENT_TOL > default.

        Raises ValueError when the chosen value is not a positive finite number.
        """
        environ = os.environ if environ is None else environ
        if flag_tol is not None:
            tol = flag_tol
        elif environ.get(ENV_TOL, "").strip():
            raw = environ[ENV_TOL].strip()
            try:
                tol = float(raw)
            except ValueError:
                raise ValueError(f"{ENV_TOL}={raw!r} is not a number")
        else:
            tol = DEFAULT_VERIFY_TOL

        if not math.isfinite(tol) or tol <= 0.0:
            raise ValueError(f"verification tolerance must be positive, got {tol}")
        return cls(verify_tol=tol)
