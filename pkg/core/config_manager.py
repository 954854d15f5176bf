import json
import os
from datetime import datetime
from typing import Any, Dict, Optional, Tuple

import numpy as np

from core.errors import ConfigError
from core.logging_setup import create_component_logger
from estimation.fisher import Scheme
from harness.experiment_config import (ChannelSpec, CodeSpec, DecoderPolicy, ExperimentConfig,
                                       ExperimentKind, StopRule)

INT_KEYS = {
    "peg_n", "peg_col_weight", "peg_row_weight", "peg_seed",
    "bicycle_n", "bicycle_k", "bicycle_row_weight", "bicycle_seed",
    "target_block_errors", "max_trials", "max_iters", "master_seed", "threads", "batch_size",
}
FLOAT_KEYS = {
    "p_true", "f_true", "grid_start", "grid_stop", "grid_step", "delta_ratio", "f_cap",
    "n_probes", "damping", "f_hat",
}
BOOL_KEYS = {"svg"}
LIST_KEYS = {"grid", "delta_grid", "probes_grid"}

# Section holding each experiment kind's parameters
KIND_SECTIONS = {
    ExperimentKind.CLASSICAL_MISMATCH: "Classical Mismatch Sweep",
    ExperimentKind.QUANTUM_MISMATCH: "Quantum Mismatch Sweep",
    ExperimentKind.IMPROVED: "Improved Decoder",
    ExperimentKind.DELTA_FIT: "Delta Fit",
    ExperimentKind.PROBE_TRADEOFF: "Probe Tradeoff",
}


def grid_from_range(start: float, stop: float, step: float) -> Tuple[float, ...]:
    """Inclusive arithmetic grid, rounded so 0.02 + 5*0.01 prints as 0.07"""
    if step <= 0.0:
        raise ConfigError(f"grid_step must be positive, got {step}")
    if stop < start:
        raise ConfigError(f"grid_stop {stop} is below grid_start {start}")
    count = int(round((stop - start) / step)) + 1
    return tuple(float(v) for v in np.round(start + step * np.arange(count), 12))


class ConfigManager:
    """Sectioned JSON configuration for every experiment"""

    def __init__(self, config_file: str = "qldpc_config.json"):
        self.config_file = config_file
        self.logger = create_component_logger("ConfigManager")

        # Default configuration for every section
        self.default_configs = {
            "Code": {
                "peg_n": 2040,
                "peg_col_weight": 3,
                "peg_row_weight": 6,
                "peg_seed": 1,
                "bicycle_n": 1034,
                "bicycle_k": 517,
                "bicycle_row_weight": 16,
                "bicycle_seed": 1,
                "classical_path": None,
                "quantum_path": None
            },
            "Classical Mismatch Sweep": {
                "p_true": 0.07,
                "grid_start": 0.02,
                "grid_stop": 0.16,
                "grid_step": 0.01,
                "noise_mode": "iid"
            },
            "Quantum Mismatch Sweep": {
                "f_true": 0.02,
                "grid_start": 0.005,
                "grid_stop": 0.06,
                "grid_step": 0.0025,
                "noise_mode": "fixed_weight",
                "policy": "fixed",
                "f_hat": None
            },
            "Improved Decoder": {
                "scheme": "B",
                "delta_ratio": 0.5,
                "f_cap": 0.0417,
                "n_probes": None,
                "grid": [0.01, 0.015, 0.02, 0.025, 0.03, 0.035],
                "noise_mode": "fixed_weight"
            },
            "Delta Fit": {
                "f_true": 0.02,
                "delta_grid": [0.0, 0.2, 0.4, 0.6, 0.8, 1.0, 1.2],
                "noise_mode": "fixed_weight"
            },
            "Probe Tradeoff": {
                "f_true": 0.02,
                "probes_grid": [1, 10, 100, 1034, 10000],
                "noise_mode": "fixed_weight"
            },
            "Fisher Table": {
                "grid_start": 0.01,
                "grid_stop": 0.74,
                "grid_step": 0.01,
                "n_probes": 1034,
                "output": "fisher_table.csv"
            },
            "Monte Carlo": {
                "target_block_errors": 100,
                "max_trials": 100000,
                "max_iters": 200,
                "master_seed": 2024,
                "threads": 0,
                "batch_size": 64,
                "damping": 0.0,
                "out_dir": "results",
                "svg": False
            },
            "Logging": {
                "level": "INFO",
                "log_dir": "logs"
            }
        }
        self.configs = self._load_configs()

    def _load_configs(self) -> Dict[str, Any]:
        """Load the JSON file; a missing file means all defaults"""
        if not os.path.exists(self.config_file):
            return {}
        try:
            with open(self.config_file, "r") as f:
                configs = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(f"Malformed configuration file {self.config_file}: {e}")
        if not isinstance(configs, dict):
            raise ConfigError(f"{self.config_file} must hold a JSON object of sections")
        for section, values in configs.items():
            if section.startswith("_"):
                continue
            if not isinstance(values, dict):
                raise ConfigError(f"Section {section!r} in {self.config_file} must be a JSON object")
            configs[section] = self._process_config_values(section, values)
        return configs

    def save_configs(self) -> bool:
        """Save configurations with error handling using atomic write"""
        temp_file = self.config_file + ".tmp"
        try:
            self.configs['_metadata'] = {
                'last_updated': datetime.now().isoformat(),
                'version': '1.0'
            }

            with open(temp_file, "w") as f:
                json.dump(self.configs, f, indent=2)

            # Atomic rename
            os.replace(temp_file, self.config_file)
            return True
        except OSError as e:
            self.logger.error(f"Error saving configuration to {self.config_file}", exception=e)
            if os.path.exists(temp_file):
                try:
                    os.remove(temp_file)
                except OSError:
                    pass
            return False

    def get_service_config(self, section: str) -> Dict[str, Any]:
        """Defaults for a section with the file's values merged over them"""
        merged = dict(self.default_configs.get(section, {}))
        merged.update(self.configs.get(section, {}))
        return merged

    def update_service_config(self, section: str, updates: Dict[str, Any]) -> bool:
        """Update one section and write the file"""
        processed_updates = self._process_config_values(section, updates)
        self.configs.setdefault(section, {}).update(processed_updates)
        return self.save_configs()

    def _process_config_values(self, section: str, updates: Dict[str, Any]) -> Dict[str, Any]:
        """Convert string values to the types their keys expect"""
        processed = dict(updates)
        for key, value in updates.items():
            if value is None or not isinstance(value, str):
                continue
            try:
                if key in INT_KEYS:
                    processed[key] = int(value)
                elif key in FLOAT_KEYS:
                    processed[key] = float(value)
                elif key in BOOL_KEYS:
                    processed[key] = value.strip().lower() in ("1", "true", "yes", "on")
                elif key in LIST_KEYS:
                    processed[key] = [float(v) for v in value.split(",") if v.strip()]
            except ValueError as e:
                raise ConfigError(f"{section}.{key}: cannot convert {value!r}: {e}")
        return processed

    def get_all_configs(self) -> Dict[str, Dict[str, Any]]:
        """Every section with defaults filled in"""
        sections = list(self.default_configs) + [s for s in self.configs if s not in self.default_configs]
        return {s: self.get_service_config(s) for s in sections if not s.startswith('_')}

    def section_grid(self, section: str, key: Optional[str] = None) -> Tuple[float, ...]:
        """A section's grid: an explicit list under key, else grid_start/grid_stop/grid_step"""
        values = self.get_service_config(section)
        if key is not None and values.get(key) is not None:
            return tuple(float(v) for v in values[key])
        return grid_from_range(float(values["grid_start"]), float(values["grid_stop"]),
                               float(values["grid_step"]))

    def _code_spec(self, kind: ExperimentKind, code_path: Optional[str]) -> CodeSpec:
        code = self.get_service_config("Code")
        path = code_path or code.get("quantum_path" if kind.quantum else "classical_path")
        if path:
            return CodeSpec(family="file", n=0, path=path)
        if kind.quantum:
            return CodeSpec(family="bicycle", n=int(code["bicycle_n"]), k=int(code["bicycle_k"]),
                            row_weight=int(code["bicycle_row_weight"]), seed=int(code["bicycle_seed"]))
        return CodeSpec(family="peg", n=int(code["peg_n"]), col_weight=int(code["peg_col_weight"]),
                        row_weight=int(code["peg_row_weight"]), seed=int(code["peg_seed"]))

    def build_experiment_config(self, kind: ExperimentKind,
                                overrides: Optional[Dict[str, Any]] = None) -> ExperimentConfig:
        """Immutable, validated config for one experiment; None-valued overrides are ignored"""
        overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
        section_name = KIND_SECTIONS[kind]
        section = self.get_service_config(section_name)
        section.update({k: v for k, v in overrides.items() if k in section})
        monte_carlo = self.get_service_config("Monte Carlo")
        monte_carlo.update({k: v for k, v in overrides.items() if k in monte_carlo})
        improved = self.get_service_config("Improved Decoder")
        improved.update({k: v for k, v in overrides.items() if k in ("scheme", "delta_ratio", "f_cap", "n_probes")})

        if "grid" in overrides:
            grid = tuple(float(v) for v in overrides["grid"])
        elif kind is ExperimentKind.IMPROVED:
            grid = self.section_grid(section_name, "grid")
        elif kind is ExperimentKind.DELTA_FIT:
            grid = tuple(float(v) for v in section["delta_grid"])
        elif kind is ExperimentKind.PROBE_TRADEOFF:
            grid = tuple(float(v) for v in section["probes_grid"])
        else:
            grid = self.section_grid(section_name)

        if kind is ExperimentKind.CLASSICAL_MISMATCH:
            true_value = overrides.get("p_true", overrides.get("f_true", section["p_true"]))
        elif kind is ExperimentKind.IMPROVED:
            true_value = None
        else:
            true_value = section["f_true"]

        try:
            scheme = Scheme.parse(improved["scheme"])
        except ValueError as e:
            raise ConfigError(f"decoder.scheme: {e}")
        n_probes = improved.get("n_probes")

        if kind is ExperimentKind.QUANTUM_MISMATCH:
            mode, f_hat = str(section["policy"]), section.get("f_hat")
        else:
            stray = [key for key in ("policy", "f_hat") if key in overrides]
            if stray:
                raise ConfigError(f"{', '.join(stray)} only apply to the quantum mismatch sweep, not {kind.value}")
            mode = "improved" if kind.quantum else "fixed"
            f_hat = None

        cfg = ExperimentConfig(
            kind=kind,
            code=self._code_spec(kind, overrides.get("code_path")),
            channel=ChannelSpec(
                kind="depolarizing" if kind.quantum else "bsc",
                true_value=None if true_value is None else float(true_value),
                noise_mode=section.get("noise_mode", "fixed_weight"),
            ),
            decoder=DecoderPolicy(
                mode=mode,
                f_hat=None if f_hat is None else float(f_hat),
                scheme=scheme,
                n_probes=None if n_probes is None else float(n_probes),
                delta_ratio=float(improved["delta_ratio"]),
                f_cap=float(improved["f_cap"]),
            ),
            stop=StopRule(
                target_block_errors=int(monte_carlo["target_block_errors"]),
                max_trials=int(monte_carlo["max_trials"]),
            ),
            grid=grid,
            max_iters=int(monte_carlo["max_iters"]),
            master_seed=int(monte_carlo["master_seed"]),
            threads=int(monte_carlo["threads"]),
            batch_size=int(monte_carlo["batch_size"]),
            damping=float(monte_carlo["damping"]),
            out_dir=str(monte_carlo["out_dir"]),
            svg=bool(monte_carlo["svg"]),
        )
        return cfg.validate()


# Global config manager instance
_config_manager: Optional[ConfigManager] = None


def get_config_manager(config_file: Optional[str] = None) -> ConfigManager:
    """Get global config manager instance; passing a file reloads from it"""
    global _config_manager
    if _config_manager is None or config_file is not None:
        _config_manager = ConfigManager(config_file or "qldpc_config.json")
    return _config_manager
