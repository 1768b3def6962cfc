"""Noise budget of a cold-damped capacitive accelerometer."""

from ._core import (
    HBAR,
    K_BOLTZMANN,
    BudgetPoint,
    Config,
    ConfigError,
    DomainError,
    InstrumentParams,
    NumericalError,
    breakdown,
    budget,
    cold_damped_estimator,
    config_digest,
    dump_config,
    effective_energy,
    estimator_coefficients,
    free_mass_coefficients,
    load_config,
    network_estimator,
    optimal_matching,
    parse_config,
    reference,
    sweep_frequency,
    sweep_parameter,
    verify,
)

__version__ = "0.1.0"
