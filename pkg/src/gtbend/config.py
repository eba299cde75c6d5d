"""Central numeric tolerances and sampling defaults."""

from __future__ import annotations

from dataclasses import asdict, dataclass, replace
from typing import Any


@dataclass(frozen=True)
class Tolerances:
    composition: float = 1e-10  # projective equality of composed products
    single_op: float = 1e-12  # single-operation identities
    degenerate: float = 1e-8  # |<P, p>| threshold for dual pairs, |det| for maps
    cell_identity: float = 1e-8  # dedup of developed cells
    shrink: float = 1e-9  # membership slack for sampled convexity
    orientation: float = 1e-12  # 2-D orientation predicates
    face: float = 1e-9  # active-constraint detection on polytopes

    def to_dict(self) -> dict[str, float]:
        return asdict(self)

    def updated(self, **overrides: Any) -> "Tolerances":
        unknown = set(overrides) - set(asdict(self))
        if unknown:
            raise KeyError(f"unknown tolerance keys: {sorted(unknown)}")
        return replace(self, **{k: float(v) for k, v in overrides.items()})


@dataclass(frozen=True)
class SamplingDefaults:
    global_trials: int = 10_000
    adjacency_trials: int = 1_000
    disjoint_points: int = 1_000
    frontier_directions: int = 2048
    truncation_cap: int = 100_000
    geodesic_cap: int = 100_000


DEFAULT_TOLERANCES = Tolerances()
DEFAULT_SAMPLING = SamplingDefaults()
