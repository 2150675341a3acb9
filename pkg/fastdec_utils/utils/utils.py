"""
Toolkit utils
"""

import collections
import logging
import os

from fastdec_utils.constants import EnvVariablesConf


def any_duplicated(l: list) -> bool:
    """
    Checks if the given list contains any duplicated values.
    """
    for _, count in collections.Counter(l).items():
        if count > 1:
            return True
    return False


def get_env_params() -> dict:
    """
    Retrieves the configuration values from the environment
    variables, falling back to the defaults of `EnvVariablesConf`.

    Returns
    -------
    `dict`
        Lower-case keys ('tolerance', 'brute_force_cap', ...) mapped
        to values already cast to their python type.

    Raises
    ------
    `ValueError`
        If a variable is set to a value that can't be cast.
    """
    conf = EnvVariablesConf
    params = {}
    for key, env_name in conf.KEY_NAMES.items():
        raw = os.environ.get(env_name, conf.DEFAULT_VALUES[key])
        try:
            params[key.lower()] = conf.CASTS[key](raw)
        except ValueError as e:
            raise ValueError(
                f"Environment variable '{env_name}' has an invalid value '{raw}'"
            ) from e
    return params


def default_tolerance() -> float:
    return get_env_params()["tolerance"]


def default_invertibility_tolerance() -> float:
    return get_env_params()["invertibility_tolerance"]


def load_dotenv_file(path: str = ".env"):
    """
    Loads the `.env` file at `path` into the environment
    if it exists and python-dotenv is installed.
    """
    if not os.path.exists(path):
        return False
    try:
        from dotenv import load_dotenv
    except ModuleNotFoundError:
        logging.warning("'.env' file was found but module python-dotenv is not installed.")
        return False
    try:
        load_dotenv(path)
    except Exception:
        logging.error("Error loading '.env' file:")
        logging.debug("dotenv error stack:", exc_info=True)
        return False
    return True


def configure_logging(verbosity: int = 0):
    """
    Sends log records to standard error at the configured level,
    raised to INFO or DEBUG by `verbosity`.
    """
    level_name = get_env_params()["log_level"].upper()
    level = getattr(logging, level_name, logging.WARNING)
    if verbosity == 1:
        level = min(level, logging.INFO)
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    logging.getLogger("fastdec_utils").setLevel(level)


def add_code_args(parser, required: bool = True):
    """
    Adds the arguments that select a code basis
    to an argparse.ArgumentParser object.
    """
    group = parser.add_mutually_exclusive_group(required=required)
    group.add_argument(
        "--builtin",
        type=str,
        action="store",
        help="Built-in code: 'alamouti', 'silver' or 'mo:<ell>'",
    )
    group.add_argument(
        "--basis",
        type=str,
        action="store",
        help="Path to a code basis JSON file",
    )


def add_partition_args(parser):
    """
    Adds the arguments that select a group partition
    to an argparse.ArgumentParser object.
    """
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument(
        "--partition",
        type=str,
        action="store",
        help="Path to a group partition JSON file",
    )
    group.add_argument(
        "--auto",
        action="store_true",
        help="Use the optimal partition of the code's conflict graph",
    )


def add_seed_args(parser):
    """
    Adds the mandatory seed argument to an argparse.ArgumentParser object.
    """
    parser.add_argument(
        "--seed",
        type=int,
        action="store",
        help="Seed of the random streams (required, no clock default)",
        required=True,
    )
