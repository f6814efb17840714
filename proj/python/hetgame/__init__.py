"""Python bindings for the hetgame spectrum-sharing simulator."""

from ._core import (
    Channel,
    Outcome,
    ScenarioConfig,
    config_keys,
    core_check,
    exact_price_oracle,
    generate_channel,
    gram_eigenvalues,
    load_config,
    overhead,
    parse_config,
    payoff_division,
    preset_names,
    run,
    run_preset,
    start_price,
    subband_payoff,
    summary_columns,
    trace_columns,
    verify,
    waterfill_power,
)

__all__ = [
    "Channel",
    "Outcome",
    "ScenarioConfig",
    "config_keys",
    "core_check",
    "exact_price_oracle",
    "generate_channel",
    "gram_eigenvalues",
    "load_config",
    "overhead",
    "parse_config",
    "payoff_division",
    "preset_names",
    "run",
    "run_preset",
    "start_price",
    "subband_payoff",
    "summary_columns",
    "trace_columns",
    "verify",
    "waterfill_power",
]


def configure(**overrides):
    """ScenarioConfig with the given fields overridden, validated."""
    config = ScenarioConfig()
    for key, value in overrides.items():
        config.set(key, str(value))
    config.validate()
    return config
