from codes.pauli import PauliVector
from codes.stabilizer import (StabilizerCode, css_code, logical_operators, pauli_to_binary,
                              syndrome)
from codes.classical import ClassicalCode, tanner_girth
from codes.bicycle import build_bicycle_code
from codes.peg import build_peg_regular
from codes.serialization import load_code, save_code

__all__ = [
    "PauliVector", "StabilizerCode", "ClassicalCode",
    "pauli_to_binary", "css_code", "logical_operators", "syndrome", "tanner_girth",
    "build_bicycle_code", "build_peg_regular", "load_code", "save_code",
]
