"""
Monte-Carlo comparison of the exhaustive and the conditioned decoder
over Y = H X + N.
"""
from __future__ import annotations

import itertools
import logging
import multiprocessing as mp
import time
import typing as tp
from dataclasses import dataclass

import numpy as np
import pandas as pd

from fastdec_utils.codes import CodeBasis, assemble
from fastdec_utils.decoder.fast import fast_decode
from fastdec_utils.decoder.ml import ml_brute, search_size
from fastdec_utils.decoder.models import SimConfig
from fastdec_utils.lattice import build_T, gaussian_matrix, ordered_qr, sample_channel
from fastdec_utils.mograph import ConflictGraph, GroupPartition, conflict_graph
from fastdec_utils.utils.rng import make_rng

logger = logging.getLogger(__name__)

TRIAL_COLUMNS = ["n0", "trial", "agree", "ser_contrib", "evals_brute", "evals_fast"]


def _channel_stream(trial: int) -> int:
    return 2 * trial


def _symbol_stream(trial: int) -> int:
    return 2 * trial + 1


def run_trials(
    basis: CodeBasis,
    partition: GroupPartition,
    config: SimConfig,
    graph: ConflictGraph,
    trials: tp.Sequence[int],
    tol: float = None,
) -> pd.DataFrame:
    """
    Runs the given trial indices for every N0 of the grid. Every trial
    draws from its own streams, so rows don't depend on how trials are
    split between workers.
    """
    values = config.constellation.as_array()
    rows = []
    for trial in trials:
        trial = int(trial)
        H = sample_channel(basis.n, config.seed, _channel_stream(trial)).H
        rng = make_rng(config.seed, _symbol_stream(trial))
        s = rng.choice(values, size=basis.size)
        unit_noise = gaussian_matrix(rng, (basis.n, basis.n))
        X = assemble(basis, s)
        qr = ordered_qr(build_T(basis, H))
        for n0 in config.noise_variances:
            Y = H @ X + np.sqrt(n0) * unit_noise
            brute = ml_brute(Y, H, basis, config.constellation, qr=qr)
            fast = fast_decode(Y, H, basis, partition, config.constellation, graph=graph, tol=tol)
            agree = bool(np.array_equal(brute.symbols, fast.symbols)) and abs(
                fast.metric - brute.metric
            ) <= 1e-9 * (1.0 + brute.metric)
            if not agree:
                logger.warning(
                    "Trial %d at N0=%g: decoders disagree (metrics %.12g / %.12g)",
                    trial, n0, brute.metric, fast.metric,
                )
            rows.append(
                {
                    "n0": n0,
                    "trial": trial,
                    "agree": agree,
                    "ser_contrib": float(np.mean(brute.symbols != s)),
                    "evals_brute": brute.metric_evals,
                    "evals_fast": fast.metric_evals,
                }
            )
    return pd.DataFrame(rows, columns=TRIAL_COLUMNS)


@dataclass(frozen=True, eq=False)
class SimulationResult:
    """
    Trial rows and their per-N0 summary.
    """

    trials: pd.DataFrame
    exponent: int
    wall_clock: tp.Optional[float] = None

    @property
    def summary(self) -> pd.DataFrame:
        grouped = self.trials.groupby("n0", sort=False)
        frame = pd.DataFrame(
            {
                "trials": grouped["trial"].count(),
                "agreement_rate": grouped["agree"].mean(),
                "ser": grouped["ser_contrib"].mean(),
                "mean_evals_brute": grouped["evals_brute"].mean(),
                "mean_evals_fast": grouped["evals_fast"].mean(),
            }
        ).reset_index()
        frame["eval_ratio"] = frame["mean_evals_brute"] / frame["mean_evals_fast"]
        return frame

    def to_dict(self) -> tp.Dict[str, tp.Any]:
        doc = {
            "exponent": self.exponent,
            "agreement_rate": float(self.trials["agree"].mean()),
            "by_n0": [
                {key: (value.item() if hasattr(value, "item") else value) for key, value in row.items()}
                for row in self.summary.to_dict(orient="records")
            ],
        }
        if self.wall_clock is not None:
            doc["wall_clock_seconds"] = self.wall_clock
        return doc


def simulate(
    basis: CodeBasis,
    partition: GroupPartition,
    config: SimConfig,
    tol: float = None,
) -> SimulationResult:
    """
    Decodes `config.trials` random transmissions with both decoders for
    every noise variance, in `config.processes` worker processes.

    Raises
    ------
    `SearchLimitError`
        If the exhaustive decoder's search exceeds the cap.
    `PartitionError`
        If the partition is invalid for the code.
    """
    search_size(config.constellation, basis)
    graph = conflict_graph(basis, tol)
    partition.validate_against(graph)
    started = time.perf_counter()
    indices = np.arange(config.trials)
    if config.processes == 1:
        trials = run_trials(basis, partition, config, graph, indices, tol)
    else:
        chunks = [chunk for chunk in np.array_split(indices, config.processes) if chunk.size]
        args = zip(
            itertools.repeat(basis),
            itertools.repeat(partition),
            itertools.repeat(config),
            itertools.repeat(graph),
            chunks,
            itertools.repeat(tol),
        )
        with mp.Pool(len(chunks)) as pool:
            frames = pool.starmap(run_trials, args)
        trials = pd.concat(frames, ignore_index=True)
    grid_position = {n0: position for position, n0 in enumerate(config.noise_variances)}
    trials = (
        trials.assign(_grid=trials["n0"].map(grid_position))
        .sort_values(["_grid", "trial"], kind="mergesort")
        .drop(columns="_grid")
        .reset_index(drop=True)
    )
    elapsed = time.perf_counter() - started
    logger.info("Simulated %d trials over %d noise levels in %.2fs",
                config.trials, len(config.noise_variances), elapsed)
    return SimulationResult(
        trials=trials,
        exponent=partition.exponent,
        wall_clock=elapsed if config.timing else None,
    )
