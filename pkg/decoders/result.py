from dataclasses import dataclass
from typing import Any, Dict, Optional, Union

import numpy as np

from codes.pauli import PauliVector
from gf2.matrix import BinaryVector


@dataclass
class DecodeResult:
    """Outcome of one decoding run; a timeout is a result, not an error"""
    converged: bool
    iterations_used: int
    error_estimate: Union[PauliVector, BinaryVector]
    syndrome_matched: bool
    logical_failure: Optional[bool] = None
    posteriors: Optional[np.ndarray] = None
    codeword_estimate: Optional[BinaryVector] = None

    def to_record(self) -> Dict[str, Any]:
        """Flat record for the decode subcommand"""
        record = {
            "converged": self.converged,
            "iterations_used": self.iterations_used,
            "syndrome_matched": self.syndrome_matched,
            "logical_failure": self.logical_failure,
            "error_estimate": self.error_estimate.to_string(),
            "error_weight": self.error_estimate.weight,
        }
        if self.codeword_estimate is not None:
            record["codeword_estimate"] = self.codeword_estimate.to_string()
        return record
