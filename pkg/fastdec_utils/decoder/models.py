import typing as tp
from dataclasses import dataclass, field

import numpy as np

from fastdec_utils.codes import Constellation


@dataclass(frozen=True, eq=False)
class DecodeResult:
    """
    Decoded real symbols in basis order, their metric
    ||Q^t vec_r(Y) - R s||^2 and the number of metric evaluations.
    """

    symbols: np.ndarray
    metric: float
    metric_evals: int

    def __post_init__(self):
        if self.metric < 0:
            raise ValueError(f"Metric must be nonnegative, got {self.metric}")


@dataclass(frozen=True)
class SimConfig:
    """
    Monte-Carlo settings. `noise_variances` is the grid of N0 values;
    every trial reuses its symbols, channel and unit noise across the grid.
    """

    trials: int
    noise_variances: tp.Tuple[float, ...]
    seed: int
    constellation: Constellation
    processes: int = 1
    timing: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"At least one trial is needed, got {self.trials}")
        variances = tuple(float(n0) for n0 in self.noise_variances)
        if not variances:
            raise ValueError("At least one noise variance is needed")
        if any(n0 < 0 for n0 in variances):
            raise ValueError(f"Noise variances must be nonnegative, got {variances}")
        if self.processes < 1:
            raise ValueError("processes must be greater than 0")
        object.__setattr__(self, "noise_variances", tuple(dict.fromkeys(variances)))

    @property
    def noise_variance(self) -> float:
        """First N0 of the grid."""
        return self.noise_variances[0]
