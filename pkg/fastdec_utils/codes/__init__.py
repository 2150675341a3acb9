from .models import (
    CodeBasis,
    Constellation,
    assemble,
    basis_from_codeword,
    complex_symbols,
    pam_constellation,
)
from .builtin import alamouti_code, builtin_code, family_code, silver_code
from .io import decode_code, encode_code, load_code, save_code
