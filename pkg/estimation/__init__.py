from estimation.density import DensityOperator, apply_depolarizing, bell_state, depolarizing_derivative
from estimation.fisher import Scheme, cramer_rao_sd, fisher_table, qfi, qfi_closed_form, sld
from estimation.estimator import EstimatorModel, MismatchPolicy, improved_estimate, sample_estimate

__all__ = [
    "DensityOperator", "apply_depolarizing", "bell_state", "depolarizing_derivative",
    "Scheme", "sld", "qfi", "qfi_closed_form", "cramer_rao_sd", "fisher_table",
    "EstimatorModel", "MismatchPolicy", "improved_estimate", "sample_estimate",
]
