from channels.depolarizing import (DepolarizingChannel, sample_depolarizing,
                                   sample_depolarizing_fixed_weight, sample_depolarizing_iid)
from channels.bsc import BscChannel, sample_bsc
from channels.shannon import binary_entropy, shannon_limit_bsc

__all__ = [
    "DepolarizingChannel", "BscChannel",
    "sample_depolarizing", "sample_depolarizing_iid", "sample_depolarizing_fixed_weight",
    "sample_bsc", "binary_entropy", "shannon_limit_bsc",
]
