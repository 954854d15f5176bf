from decoders.result import DecodeResult
from decoders.bsc_bp import decode_bsc, decode_bsc_syndrome
from decoders.quaternary_bp import check_update, decode_depolarizing
from decoders.bruteforce import (bsc_posterior_bruteforce, check_messages_exhaustive,
                                 decode_ml_bruteforce, depolarizing_posterior_bruteforce)
from decoders.residual import Outcome, classify_residual

__all__ = [
    "DecodeResult", "decode_bsc", "decode_bsc_syndrome", "decode_depolarizing", "check_update",
    "decode_ml_bruteforce", "depolarizing_posterior_bruteforce", "bsc_posterior_bruteforce",
    "check_messages_exhaustive", "Outcome", "classify_residual",
]
