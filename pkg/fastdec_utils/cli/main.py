"""
Command line entry point: `fastdec <command> ...`.

Exit codes: 0 on success, 1 when a verification fails, 2 on usage
or input errors. Diagnostics go to standard error, data to standard
output (or `--output`).
"""
import argparse
import logging
import sys
import typing as tp

from fastdec_utils.cli import commands
from fastdec_utils.cli.output import FORMATS, emit
from fastdec_utils.exceptions import (
    ChannelSamplingError,
    CodeBasisError,
    CodeFormatError,
    ConstructionError,
    FastDecError,
    LatticeRankError,
    MatrixShapeError,
    PartitionError,
    SearchLimitError,
    VerificationError,
)
from fastdec_utils.utils import (
    add_code_args,
    add_partition_args,
    add_seed_args,
    configure_logging,
    load_dotenv_file,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2

INPUT_ERRORS = (
    CodeBasisError,
    CodeFormatError,
    ConstructionError,
    MatrixShapeError,
    PartitionError,
    SearchLimitError,
    ValueError,
    OSError,
)
VERIFICATION_ERRORS = (VerificationError, LatticeRankError, ChannelSamplingError)


def add_global_args(parser: argparse.ArgumentParser):
    parser.add_argument(
        "-v", "--verbose", action="count", default=0,
        help="Log progress to standard error (-vv for debug)",
    )
    parser.add_argument(
        "--tol", type=float, default=None,
        help="Relative tolerance of the structural predicates (default: FASTDEC_TOLERANCE)",
    )
    parser.add_argument("--format", choices=FORMATS, default="json", help="Output format")
    parser.add_argument("--output", type=str, default=None, help="Write the output to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fastdec",
        description="Fast-decodability analysis of linear space-time block codes",
    )
    add_global_args(parser)
    subparsers = parser.add_subparsers(dest="command", required=True)

    analyze = subparsers.add_parser("analyze", help="Optimal partition and bound checks of a code")
    add_code_args(analyze)
    analyze.add_argument("--division", action="store_true",
                         help="The basis comes from a division algebra")
    analyze.add_argument("--save-partition", type=str, default=None,
                         help="Write the optimal partition to this JSON file")
    analyze.set_defaults(handler=commands.analyze)

    qr_verify = subparsers.add_parser("qr-verify", help="Zero-block structure of R over random channels")
    add_code_args(qr_verify)
    add_partition_args(qr_verify)
    add_seed_args(qr_verify)
    qr_verify.add_argument("--trials", type=int, default=50, help="Number of channels")
    qr_verify.add_argument("--block-tol", type=float, default=1e-8,
                           help="Off-block tolerance relative to ||T||_F")
    qr_verify.set_defaults(handler=commands.qr_verify)

    construct = subparsers.add_parser("construct", help="Build and verify a matrix family")
    construct.add_argument("--family", choices=["u", "anticommute", "mo", "hre"], required=True)
    construct.add_argument("--ell", type=int, default=None, help="Family parameter ell")
    construct.add_argument("--t", type=int, default=None, help="Parameter t of the hre family")
    construct.add_argument("--dimension", type=int, default=None,
                           help="Embed the largest family into n x n matrices instead")
    construct.set_defaults(handler=commands.construct)

    bounds = subparsers.add_parser("bounds", help="Group-count and anticommuting bounds")
    bounds.add_argument("--n", type=int, required=True, help="Matrix size")
    bounds.add_argument("--deg", type=int, default=None, help="Degree of the algebra")
    bounds.add_argument("--ind", type=int, default=None, help="Index of the algebra")
    bounds.add_argument("--division", action="store_true", help="Division algebra (ind = deg)")
    bounds.set_defaults(handler=commands.bounds)

    simulate = subparsers.add_parser("simulate", help="Compare the exhaustive and the fast decoder")
    add_code_args(simulate)
    add_partition_args(simulate)
    add_seed_args(simulate)
    simulate.add_argument("--trials", type=int, default=200, help="Number of transmissions")
    simulate.add_argument("--n0", type=float, action="append", default=None,
                          help="Noise variance; repeat for a grid (default 0)")
    simulate.add_argument("--constellation", type=int, default=4,
                          help="Size q of the PAM alphabet {+-1, ..., +-(q-1)}")
    simulate.add_argument("--processes", type=int, default=None,
                          help="Worker processes (default: FASTDEC_PROCESSES)")
    simulate.add_argument("--csv", type=str, default=None, help="Write the trial rows to this CSV file")
    simulate.add_argument("--timing", action="store_true", help="Report the wall clock time")
    simulate.set_defaults(handler=commands.simulate_command)

    oracle = subparsers.add_parser("oracle", help="Check the partition search against enumeration")
    add_seed_args(oracle)
    oracle.add_argument("--graphs", type=int, default=500, help="Number of random graphs")
    oracle.add_argument("--max-vertices", type=int, default=10, help="Largest vertex count")
    oracle.add_argument("--edge-prob", type=float, default=None,
                        help="Edge probability (default: drawn per graph)")
    oracle.set_defaults(handler=commands.oracle)
    return parser


def run(argv: tp.Sequence[str] = None) -> int:
    """
    Parses `argv`, runs the subcommand and returns the exit code.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    load_dotenv_file()
    configure_logging(args.verbose)
    try:
        result = args.handler(args)
        emit(result, args.format, args.output)
    except VERIFICATION_ERRORS as e:
        logger.error("Verification failed: %s", e)
        return EXIT_VERIFICATION
    except INPUT_ERRORS as e:
        logger.error("%s", e)
        return EXIT_USAGE
    except FastDecError as e:
        logger.error("%s", e)
        return EXIT_USAGE
    if not result.ok:
        logger.error("Command '%s' finished with failed checks", args.command)
        return EXIT_VERIFICATION
    return EXIT_OK


def main():
    sys.exit(run())
