from .exhaustive import exhaustive_agent_optimum
from .grid import grid_stackelberg_optimum
from .report import OracleReport
from .volume import monte_carlo_volume, wilson_interval
from .water_filling import water_filling_optimum

__all__ = [
    "OracleReport", "exhaustive_agent_optimum", "grid_stackelberg_optimum",
    "monte_carlo_volume", "wilson_interval", "water_filling_optimum",
]
