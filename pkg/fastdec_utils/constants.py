
class EnvVariablesConf:
    """
    Key names of the environment variables used
    for configuration and their default values.
    """

    KEY_NAMES = {
        "TOLERANCE": "FASTDEC_TOLERANCE",
        "INVERTIBILITY_TOLERANCE": "FASTDEC_INVERTIBILITY_TOLERANCE",
        "EXACT_SEARCH_LIMIT": "FASTDEC_EXACT_SEARCH_LIMIT",
        "BRUTE_FORCE_CAP": "FASTDEC_BRUTE_FORCE_CAP",
        "PROCESSES": "FASTDEC_PROCESSES",
        "LOG_LEVEL": "FASTDEC_LOG_LEVEL",
    }
    DEFAULT_VALUES = {
        "TOLERANCE": "1e-9",
        "INVERTIBILITY_TOLERANCE": "1e-9",
        "EXACT_SEARCH_LIMIT": "24",
        "BRUTE_FORCE_CAP": str(2 ** 24),
        "PROCESSES": "1",
        "LOG_LEVEL": "WARNING",
    }
    CASTS = {
        "TOLERANCE": float,
        "INVERTIBILITY_TOLERANCE": float,
        "EXACT_SEARCH_LIMIT": int,
        "BRUTE_FORCE_CAP": int,
        "PROCESSES": int,
        "LOG_LEVEL": str,
    }


class Tolerances:
    """
    Fixed numerical thresholds that are part of the
    verification contracts and not meant to be configured.
    """

    # Gram-Schmidt column-norm collapse, relative to ||T||_F.
    RANK_COLLAPSE = 1e-10
    # QR post-conditions.
    QR_RECONSTRUCTION = 1e-9
    # Column orthogonality tests, relative to the product of column norms.
    COLUMN_ORTHOGONAL = 1e-8
    COLUMN_WITNESS = 1e-6
    # Normalization post-check.
    NORMALIZATION = 1e-8
    # Channels with |det H| below this are resampled.
    CHANNEL_DETERMINANT = 1e-8
    CHANNEL_RETRIES = 16


class Golden:
    """
    Constants of the splitmix64 seed mixer.
    """

    GAMMA = 0x9E3779B97F4A7C15
    MIX_1 = 0xBF58476D1CE4E5B9
    MIX_2 = 0x94D049BB133111EB
    MASK = (1 << 64) - 1
