"""Co-design of intermodal mobility systems: Pareto fronts of travel time, cost and emissions."""

from ._core import (
    ConfigError,
    IoError,
    __version__,
    av_query,
    monetize_2d,
    pareto_min,
    plot_data,
    run,
    solve,
    staircase,
    subway_cost,
    validate,
)

__all__ = [
    "ConfigError",
    "IoError",
    "__version__",
    "av_query",
    "monetize_2d",
    "pareto_min",
    "plot_data",
    "run",
    "solve",
    "staircase",
    "subway_cost",
    "validate",
]
