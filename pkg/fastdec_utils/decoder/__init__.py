from .models import DecodeResult, SimConfig
from .ml import candidate_grid, frobenius_metric, ml_brute, search_size
from .fast import fast_decode, metric_decomposition_gap
from .simulation import TRIAL_COLUMNS, SimulationResult, run_trials, simulate
