"""Bounds for the exhaustive sweeps, shared by the acceptance suite and scripts."""

from __future__ import annotations

from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class SweepConfig:
    rho_max_n: int = 9
    iota_max_n: int = 10
    bijection_max_total: int = 7
    bijection_max_weight: int = 4
    counts_max_n: int = 8
    counts_max_s: int = 3
    merge_max_total: int = 6
    merge_max_zero_inputs: int = 4
    diamond_max_total: int = 8
    shadow_max_total: int = 7
    odd_max_total: int = 8
    odd_max_weight: int = 3
    rank_max_color: int = 6
    normalizer_max_total: int = 7
    normalizer_max_weight: int = 4
    operation_samples: int = 1000
    corpus_size: int = 10_000
    corpus_max_vertices: int = 20
    seed: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


FULL = SweepConfig()
QUICK = SweepConfig(rho_max_n=6, iota_max_n=7, bijection_max_total=5, bijection_max_weight=3, counts_max_n=6,
                    merge_max_total=4, diamond_max_total=6, shadow_max_total=5, odd_max_total=6,
                    rank_max_color=5, normalizer_max_total=5, normalizer_max_weight=3, operation_samples=100,
                    corpus_size=500)
