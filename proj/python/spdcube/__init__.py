"""Pair-generation calculator for non-phase-matched nonlinear microcubes."""

from ._core import (
    __version__,
    analytic_car,
    coherence_length,
    conversion_efficiency,
    effective_d,
    extraordinary_index,
    fit_cos2,
    fit_linear,
    index_at_angle,
    lithium_niobate_d,
    ordinary_index,
    pair_rate_degenerate,
    pair_rate_general,
    predicted_pair_rate,
    resolve_config,
    run_hbt,
    shg_delta_k,
    shg_efficiency,
)

__all__ = [
    "__version__",
    "analytic_car",
    "coherence_length",
    "conversion_efficiency",
    "effective_d",
    "extraordinary_index",
    "fit_cos2",
    "fit_linear",
    "index_at_angle",
    "lithium_niobate_d",
    "ordinary_index",
    "pair_rate_degenerate",
    "pair_rate_general",
    "predicted_pair_rate",
    "resolve_config",
    "run_hbt",
    "shg_delta_k",
    "shg_efficiency",
]
