"""Secrecy-rate and transmit-power optimization for relay networks."""

import json

from ._secopt import (
    ContractError,
    DegeneracyError,
    Error,
    InfeasibleError,
    InsufficientDofError,
    InternalError,
    NumericalError,
    Scenario,
    SchemaError,
    SchemeSolution,
    __version__,
    cj_rates,
    dbm_to_watt,
    df_rates,
    direct_rate,
    gen_channels,
    solve,
    solve_sdp,
    upper_envelope,
    watt_to_dbm,
)
from ._secopt import run_sweep_csv as _run_sweep_csv


def run_sweep(config, threads=0):
    """Run a sweep from a config dict (same layout as the preset files); returns CSV text."""
    return _run_sweep_csv(json.dumps(config), threads)


__all__ = [
    "ContractError",
    "DegeneracyError",
    "Error",
    "InfeasibleError",
    "InsufficientDofError",
    "InternalError",
    "NumericalError",
    "Scenario",
    "SchemaError",
    "SchemeSolution",
    "__version__",
    "cj_rates",
    "dbm_to_watt",
    "df_rates",
    "direct_rate",
    "gen_channels",
    "run_sweep",
    "solve",
    "solve_sdp",
    "upper_envelope",
    "watt_to_dbm",
]
