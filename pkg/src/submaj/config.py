"""Shared defaults: tolerances, run configuration."""
from __future__ import annotations

from dataclasses import dataclass

# Tolerance for class membership and relation checks (modeling error).
DEFAULT_CLASS_TOL = 1e-9
# Tolerance for algebraic identities (arithmetic error).
DEFAULT_EXACT_TOL = 1e-12


@dataclass(frozen=True)
class Config:
    """Run configuration for the CLI and the selftest battery."""

    tol_class: float = DEFAULT_CLASS_TOL
    tol_exact: float = DEFAULT_EXACT_TOL
    seed: int = 0
    output_mode: str = "text"  # "text" | "json"

    def __post_init__(self) -> None:
        if not (0.0 < self.tol_exact <= self.tol_class < 1.0):
            raise ValueError(
                "tolerances must satisfy 0 < tol_exact <= tol_class < 1, got "
                f"tol_exact={self.tol_exact}, tol_class={self.tol_class}"
            )
        if self.seed < 0:
            raise ValueError("seed must be a nonnegative integer")
        if self.output_mode not in ("text", "json"):
            raise ValueError(f"unknown output mode: {self.output_mode!r}")
