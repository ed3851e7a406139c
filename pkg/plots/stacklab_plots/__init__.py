"""Offline readers of sweep artifacts that render static images.

The package consumes only the experiment harness's on-disk outputs: per-seed
round CSVs and the sweep's report.json.  Scripts are pure readers — inputs
are hashed before and after every render and any mutation is an error.
"""

from .spec import PlotSpec
from .regret import plot_regret
from .scaling import plot_scaling

__all__ = ["PlotSpec", "plot_regret", "plot_scaling"]
__version__ = "0.1.0"
