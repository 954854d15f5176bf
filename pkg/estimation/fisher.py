#!/usr/bin/env python3
"""
Quantum Fisher information of the depolarizing channel
The symmetric logarithmic derivative L solves 2 d(rho)/df = L rho + rho L;
J(f) = tr(rho L^2) bounds any unbiased estimator through Cramer-Rao.

Case A probes the channel with an unentangled pure qubit, Case B with one
half of a Bell pair (channel on the first qubit).
"""

import math
from enum import Enum
from typing import Dict, List, Optional, Sequence

import numpy as np

from core.errors import DivergenceError, RejectedInputError, SingularSupportError
from estimation.density import (HERMITIAN_TOL, TRACE_TOL, DensityOperator, apply_depolarizing,
                                bell_state, depolarizing_derivative)

SUPPORT_TOL = 1e-12


class Scheme(Enum):
    CASE_A = "A"
    CASE_B = "B"

    @classmethod
    def parse(cls, value) -> "Scheme":
        if isinstance(value, Scheme):
            return value
        text = str(value).strip().upper()
        for scheme in cls:
            if text in (scheme.value, scheme.name, f"CASE{scheme.value}"):
                return scheme
        raise RejectedInputError(f"Unknown probe scheme: {value}")


def probe_state(scheme: Scheme) -> DensityOperator:
    if scheme is Scheme.CASE_A:
        return DensityOperator.pure([1, 0])
    return bell_state()


def sld(rho_f: DensityOperator, drho_df: np.ndarray, f: Optional[float] = None) -> np.ndarray:
    """Symmetric logarithmic derivative, solved in the eigenbasis of rho_f"""
    drho = np.asarray(drho_df, dtype=complex)
    if drho.shape != rho_f.matrix.shape:
        raise RejectedInputError(f"Derivative shape {drho.shape} does not match rho {rho_f.matrix.shape}")
    if np.abs(drho - drho.conj().T).max() > HERMITIAN_TOL:
        raise RejectedInputError("Derivative of rho is not Hermitian")
    if abs(np.trace(drho)) > TRACE_TOL:
        raise RejectedInputError(f"Derivative of rho has trace {np.trace(drho)}, expected 0")
    eigvals, eigvecs = np.linalg.eigh(rho_f.matrix)
    d = eigvecs.conj().T @ drho @ eigvecs
    denom = eigvals[:, None] + eigvals[None, :]
    support = denom > SUPPORT_TOL
    if np.any(~support & (np.abs(d) > SUPPORT_TOL)):
        raise SingularSupportError("SLD equation has no solution outside the support of rho", f=f)
    l_eig = np.zeros_like(d)
    l_eig[support] = 2.0 * d[support] / denom[support]
    return eigvecs @ l_eig @ eigvecs.conj().T


def _check_interior(f: float):
    if f <= 0.0 or f >= 0.75:
        raise DivergenceError(f"Fisher information diverges at f={f}; need 0 < f < 3/4")


def qfi(scheme: Scheme, f: float) -> float:
    """J(f) = tr(rho_f L_f^2) for the scheme's probe, computed numerically"""
    scheme = Scheme.parse(scheme)
    _check_interior(f)
    probe = probe_state(scheme)
    rho_f = apply_depolarizing(probe, f)
    l_f = sld(rho_f, depolarizing_derivative(probe), f=f)
    return float(np.trace(rho_f.matrix @ l_f @ l_f).real)


def qfi_closed_form(scheme: Scheme, f: float) -> float:
    """Case A: output spectrum {1 - 2f/3, 2f/3}; Case B: {1 - f, f/3, f/3, f/3}"""
    scheme = Scheme.parse(scheme)
    _check_interior(f)
    if scheme is Scheme.CASE_A:
        return 2.0 / (f * (3.0 - 2.0 * f))
    return 1.0 / (f * (1.0 - f))


def cramer_rao_sd(scheme: Scheme, f: float, n_probes: float) -> float:
    """Standard deviation sqrt(1 / (N_m J(f))) of an optimal unbiased estimator"""
    if n_probes <= 0:
        raise RejectedInputError(f"Probe count must be positive, got {n_probes}")
    return math.sqrt(1.0 / (n_probes * qfi_closed_form(scheme, f)))


def fisher_table(f_grid: Sequence[float], n_probes: float) -> List[Dict[str, float]]:
    """Rows of f, f_d, J_A, J_B, sd_A, sd_B for the fisher subcommand"""
    rows = []
    for f in f_grid:
        j_a, j_b = qfi(Scheme.CASE_A, f), qfi(Scheme.CASE_B, f)
        rows.append({
            "f": float(f),
            "f_d": 4.0 * float(f) / 3.0,
            "J_A": j_a,
            "J_B": j_b,
            "sd_A": math.sqrt(1.0 / (n_probes * j_a)),
            "sd_B": math.sqrt(1.0 / (n_probes * j_b)),
        })
    return rows
