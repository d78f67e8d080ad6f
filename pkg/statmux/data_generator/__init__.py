"""
Synthetic scenario and trace generation.
"""

from .scenario_generator import (
    ScenarioGenerator,
    derive_sigma_from_psnr,
    generate_scenarios,
    qstep_rates,
    synthesize_rd_samples,
    synthesize_trace,
)

__all__ = [
    "ScenarioGenerator",
    "derive_sigma_from_psnr",
    "generate_scenarios",
    "qstep_rates",
    "synthesize_rd_samples",
    "synthesize_trace",
]
