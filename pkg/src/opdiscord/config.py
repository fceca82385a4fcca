"""Search configuration shared by the discord and witness searches."""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for the grid-plus-refinement searches.

    ``grid_points = None`` resolves to the backend default: a 2000-point
    Fibonacci sphere of measurement directions for two-level systems, a
    5000-sample Haar-random basis set otherwise.
    """

    grid_points: int | None = None
    refine_iters: int = 200
    restarts: int = 4
    seed: int = 0x5EED
    tol_zero: float = 1e-9

    def resolved_grid_points(self, levels: int) -> int:
        if self.grid_points is not None:
            return self.grid_points
        return 2000 if levels == 2 else 5000

    def with_seed(self, seed: int) -> "SearchConfig":
        return replace(self, seed=seed)

    def to_obj(self) -> dict:
        return {
            "grid_points": self.grid_points,
            "refine_iters": self.refine_iters,
            "restarts": self.restarts,
            "seed": self.seed,
            "tol_zero": self.tol_zero,
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "SearchConfig":
        known = {k: obj[k] for k in ("grid_points", "refine_iters", "restarts", "seed", "tol_zero") if k in obj}
        return cls(**known)


DEFAULT_CONFIG = SearchConfig()
