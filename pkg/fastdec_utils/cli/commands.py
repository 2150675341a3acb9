"""
Subcommand handlers. Each takes the parsed arguments and returns a
`CommandResult`; exceptions are mapped to exit codes by `run`.
"""
import argparse
import logging
import typing as tp

import numpy as np
import pandas as pd

from fastdec_utils.codes import CodeBasis, builtin_code, load_code, pam_constellation
from fastdec_utils.cli.output import CommandResult
from fastdec_utils.construct import (
    AlgebraParams,
    anticommute_bound,
    bounds_table,
    build_family,
    family_for_dimension,
    hre_bound,
    hre_conditions,
    mo_group_bound,
)
from fastdec_utils.decoder import SimConfig, simulate
from fastdec_utils.exceptions import PartitionError
from fastdec_utils.lattice import build_T, off_block_magnitude, ordered_qr, permute_T, sample_channel
from fastdec_utils.matcore import encode_matrix, exact_anticommute, exact_mutually_orthogonal
from fastdec_utils.mograph import (
    GroupPartition,
    analyze_code,
    brute_force_partition,
    conflict_graph,
    load_partition,
    optimal_partition,
    random_graph,
    save_partition,
)
from fastdec_utils.mograph import normalize_to_anticommuting
from fastdec_utils.utils import get_env_params
from fastdec_utils.utils.rng import make_rng

logger = logging.getLogger(__name__)


def load_basis(args: argparse.Namespace) -> CodeBasis:
    if args.builtin:
        return builtin_code(args.builtin)
    return load_code(args.basis, args.tol)


def resolve_partition(args: argparse.Namespace, basis: CodeBasis) -> GroupPartition:
    """
    The partition file, or the optimal partition with `--auto`.

    Raises
    ------
    `PartitionError`
        With `--auto` on a code that isn't fast decodable.
    """
    if args.partition:
        return load_partition(args.partition)
    report = optimal_partition(conflict_graph(basis, args.tol))
    if not report.fast_decodable:
        raise PartitionError(f"{basis} is not fast decodable; no partition to use")
    return report.partition


def _code_document(basis: CodeBasis) -> tp.Dict[str, tp.Any]:
    return {"name": basis.name, "n": basis.n, "l": basis.l}


def analyze(args: argparse.Namespace) -> CommandResult:
    basis = load_basis(args)
    report = analyze_code(basis, tol=args.tol, division=args.division)
    if args.save_partition and report.fast_decodable:
        save_partition(report.partition, args.save_partition)
    elif args.save_partition:
        logger.warning("No partition saved: %s is not fast decodable", basis)
    document = {"code": _code_document(basis), **report.to_dict()}
    return CommandResult(document, report.checks_frame, ok=report.all_checks_pass)


def qr_verify(args: argparse.Namespace) -> CommandResult:
    basis = load_basis(args)
    partition = resolve_partition(args, basis)
    rows = []
    for trial in range(args.trials):
        H = sample_channel(basis.n, args.seed, trial).H
        lattice = build_T(basis, H)
        factors = ordered_qr(permute_T(lattice, partition))
        magnitude = off_block_magnitude(factors.R, partition)
        norm = float(np.linalg.norm(lattice.T))
        rows.append(
            {
                "trial": trial,
                "off_block": magnitude,
                "norm_T": norm,
                "relative": magnitude / norm,
                "pass": magnitude <= args.block_tol * norm,
            }
        )
    table = pd.DataFrame(rows, columns=["trial", "off_block", "norm_T", "relative", "pass"])
    all_pass = bool(table["pass"].all())
    document = {
        "code": _code_document(basis),
        "partition": partition.to_dict(),
        "tolerance": args.block_tol,
        "all_pass": all_pass,
        "max_relative": float(table["relative"].max()),
        "trials": table.to_dict(orient="records"),
    }
    return CommandResult(document, table, ok=all_pass)


def _family_verification(kind: str, members, dimension: int) -> tp.Dict[str, tp.Any]:
    pairs = [(a, b) for i, a in enumerate(members) for b in members[i + 1:]]
    verification = {
        "all_invertible": all(A.is_invertible() for A in members),
    }
    if kind == "mo":
        verification["pairs_mutually_orthogonal"] = sum(exact_mutually_orthogonal(a, b) for a, b in pairs)
        verification["normalized_round_trip"] = len(normalize_to_anticommuting(members)) == len(members) - 1
        verification["non_identity_skew_hermitian"] = all(A.is_skew_hermitian() for A in members[1:])
    else:
        verification["pairs_anticommuting"] = sum(exact_anticommute(a, b) for a, b in pairs)
    verification["pairs"] = len(pairs)
    if kind == "hre":
        verification["hre_conditions"] = all(all(hre_conditions(A).values()) for A in members)
        verification["bound"] = hre_bound(dimension)
    elif kind == "anticommute":
        verification["bound"] = anticommute_bound(AlgebraParams(deg=dimension, ind=2), "odd")
    elif kind == "mo":
        verification["bound"] = mo_group_bound(dimension, AlgebraParams(deg=dimension, ind=2)).g_even
    else:
        verification["bound"] = anticommute_bound(AlgebraParams(deg=dimension, ind=1), "even")
    verification["saturates_bound"] = len(members) == verification["bound"]
    return verification


def construct(args: argparse.Namespace) -> CommandResult:
    kind = args.family
    parameter = args.t if kind == "hre" and args.t is not None else args.ell
    if args.dimension is not None:
        members = family_for_dimension(args.dimension, kind)
        dimension = args.dimension
    else:
        if parameter is None:
            raise ValueError("construct needs --ell (or --t for hre) or --dimension")
        members = build_family(kind, parameter)
        dimension = members[0].n
    verification = _family_verification(kind, members, dimension)
    passed = verification["all_invertible"] and (
        verification.get("pairs_mutually_orthogonal", verification.get("pairs_anticommuting"))
        == verification["pairs"]
    )
    table = pd.DataFrame(
        [
            {
                "member": index,
                "hermitian": A.is_hermitian(),
                "skew_hermitian": A.is_skew_hermitian(),
                "symmetric": A.is_symmetric(),
                "unitary": A.is_unitary(),
            }
            for index, A in enumerate(members, start=1)
        ]
    )
    document = {
        "family": kind,
        "parameter": parameter,
        "dimension": dimension,
        "count": len(members),
        "verification": verification,
        "matrices": [encode_matrix(A.to_complex()) for A in members],
    }
    return CommandResult(document, table, ok=passed)


def bounds(args: argparse.Namespace) -> CommandResult:
    params = None
    if args.deg is not None or args.division:
        deg = args.deg if args.deg is not None else args.n
        ind = args.ind if args.ind is not None else (deg if args.division else 1)
        params = AlgebraParams(deg=deg, ind=ind, division=args.division)
    report = mo_group_bound(args.n, params)
    table = bounds_table(args.n, division=args.division)
    document = {"report": report.to_dict(), "table": table.to_dict(orient="records")}
    return CommandResult(document, table)


def simulate_command(args: argparse.Namespace) -> CommandResult:
    basis = load_basis(args)
    partition = resolve_partition(args, basis)
    processes = args.processes if args.processes is not None else get_env_params()["processes"]
    config = SimConfig(
        trials=args.trials,
        noise_variances=tuple(args.n0) if args.n0 else (0.0,),
        seed=args.seed,
        constellation=pam_constellation(args.constellation),
        processes=processes,
        timing=args.timing,
    )
    result = simulate(basis, partition, config, tol=args.tol)
    if args.csv:
        result.trials.to_csv(args.csv, index=False)
    document = {"code": _code_document(basis), "partition": partition.to_dict(), **result.to_dict()}
    ok = bool(result.trials["agree"].all())
    return CommandResult(document, result.summary, ok=ok)


def oracle(args: argparse.Namespace) -> CommandResult:
    if args.max_vertices < 2:
        raise ValueError("--max-vertices must be at least 2")
    rows = []
    for index in range(args.graphs):
        rng = make_rng(args.seed, index)
        v = int(rng.integers(2, args.max_vertices + 1))
        probability = args.edge_prob if args.edge_prob is not None else float(rng.uniform(0.1, 0.9))
        graph = random_graph(v, probability, args.seed, stream=args.graphs + index)
        searched = optimal_partition(graph, exact_limit=args.max_vertices)
        exhaustive = brute_force_partition(graph)
        non_edges = [
            (a, b) for a in range(v) for b in range(a + 1, v) if not graph.has_edge(a, b)
        ]
        monotone = True
        if non_edges:
            a, b = non_edges[int(rng.integers(len(non_edges)))]
            monotone = optimal_partition(graph.with_edge(a, b), exact_limit=args.max_vertices).exponent >= exhaustive.exponent
        rows.append(
            {
                "graph": index,
                "v": v,
                "edges": len(graph.edges),
                "exponent_search": searched.exponent,
                "exponent_exhaustive": exhaustive.exponent,
                "same_partition": searched.partition == exhaustive.partition,
                "agree": searched.exponent == exhaustive.exponent,
                "monotone": monotone,
            }
        )
    table = pd.DataFrame(rows)
    mismatches = int((~table["agree"]).sum()) if len(table) else 0
    document = {
        "graphs": args.graphs,
        "max_vertices": args.max_vertices,
        "seed": args.seed,
        "mismatches": mismatches,
        "partition_mismatches": int((~table["same_partition"]).sum()) if len(table) else 0,
        "monotonicity_violations": int((~table["monotone"]).sum()) if len(table) else 0,
    }
    ok = mismatches == 0 and document["monotonicity_violations"] == 0
    return CommandResult(document, table, ok=ok)
