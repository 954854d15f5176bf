#!/usr/bin/env python3
"""
QLDPC Mismatch Toolkit - Command Line Launcher
Builds codes, decodes single syndromes and runs the channel-mismatch experiments
"""

import argparse
import json
import os
import sys
import time
from typing import Any, Dict, List, Optional, Tuple

from core.config_manager import ConfigManager, get_config_manager, grid_from_range
from core.errors import ConfigError, QldpcError
from core.logging_setup import setup_application_logging

# Subcommands and what they produce
COMMANDS = {
    'construct': {
        'description': 'Build the default PEG and bicycle codes and write them as alist files',
        'outputs': ['peg-<N>.alist', 'bicycle-<N>.qalist'],
    },
    'decode': {
        'description': 'Decode one syndrome (or one sampled error) with a stored code',
        'outputs': ['JSON decode record on stdout'],
    },
    'sweep-classical': {
        'description': 'BSC block error rate against the assumed crossover probability',
        'outputs': ['classical_mismatch.csv', 'classical_mismatch.manifest.json', 'classical_mismatch.svg'],
    },
    'sweep-quantum': {
        'description': 'Depolarizing block error rate against the assumed flip probability',
        'outputs': ['quantum_mismatch.csv', 'quantum_mismatch.manifest.json', 'quantum_mismatch.svg'],
    },
    'improved': {
        'description': 'Perfect-knowledge, naive-estimate and improved decoders over true f',
        'outputs': ['improved_<scheme>.csv', 'improved_<scheme>.manifest.json', 'improved_<scheme>.svg'],
    },
    'fit-delta': {
        'description': 'Fit BLER against the overestimate ratio and report its minimiser',
        'outputs': ['delta_fit.csv', 'delta_fit.manifest.json', 'delta_fit.svg'],
    },
    'probe-tradeoff': {
        'description': 'Naive and improved decoders as the number of probe measurements grows',
        'outputs': ['probe_tradeoff.csv', 'probe_tradeoff.manifest.json', 'probe_tradeoff.svg'],
    },
    'fisher': {
        'description': 'Quantum Fisher information and Cramer-Rao spread for both probe schemes',
        'outputs': ['fisher_table.csv'],
    },
}

EXIT_CONFIG = 2
EXIT_IO = 3


def parse_grid(text: Optional[str]) -> Optional[Tuple[float, ...]]:
    """"0.01,0.02,0.03" or "start:stop:step" """
    if text is None:
        return None
    try:
        if ":" in text:
            start, stop, step = (float(v) for v in text.split(":"))
            return grid_from_range(start, stop, step)
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError as e:
        raise ConfigError(f"--grid: {e}")


def collect_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    """CLI flags as config overrides; flags left unset stay None and are ignored"""
    return {
        'code_path': getattr(args, 'code', None),
        'f_true': getattr(args, 'f_true', None),
        'f_hat': getattr(args, 'f_hat', None),
        'policy': getattr(args, 'policy', None),
        'delta_ratio': getattr(args, 'delta_ratio', None),
        'f_cap': getattr(args, 'f_cap', None),
        'n_probes': getattr(args, 'probes', None),
        'scheme': getattr(args, 'scheme', None),
        'target_block_errors': getattr(args, 'target_block_errors', None),
        'max_trials': getattr(args, 'max_trials', None),
        'max_iters': getattr(args, 'max_iters', None),
        'master_seed': getattr(args, 'seed', None),
        'out_dir': getattr(args, 'out_dir', None),
        'threads': getattr(args, 'threads', None),
        'svg': True if getattr(args, 'svg', False) else None,
        'grid': parse_grid(getattr(args, 'grid', None)),
    }


def print_sweep(result, grid_label: str):
    """Print one row per point per curve"""
    print(f"\n📊 {result.kind}")
    print(f"{'curve':>10} {grid_label:>10} {'trials':>8} {'errors':>7} {'BLER':>10} {'QBER':>10} {'iters':>7}")
    for p in result.ordered_points():
        print(f"{p.curve:>10} {p.grid_value:>10.5g} {p.trials:>8} {p.block_errors:>7} "
              f"{p.bler:>10.3e} {p.qber:>10.3e} {p.mean_iters:>7.1f}")


def report_written(paths: List[str]):
    for path in paths:
        print(f"💾 Wrote {path}")


def cmd_construct(args, config: ConfigManager) -> int:
    from codes.bicycle import build_bicycle_code
    from codes.peg import build_peg_regular
    from codes.serialization import STABILIZER_SUFFIX, save_code

    code_cfg = config.get_service_config("Code")
    out_dir = args.out_dir or os.path.join(config.get_service_config("Monte Carlo")["out_dir"], "codes")
    seed = args.seed

    families = [args.family] if args.family else ["peg", "bicycle"]
    for family in families:
        if family == "peg":
            n = args.n or code_cfg["peg_n"]
            code = build_peg_regular(n, code_cfg["peg_col_weight"], code_cfg["peg_row_weight"],
                                     seed=code_cfg["peg_seed"] if seed is None else seed)
            path = os.path.join(out_dir, f"peg-{code.n}.alist")
        else:
            n = args.n or code_cfg["bicycle_n"]
            k = args.k if args.k is not None else (code_cfg["bicycle_k"] if args.n is None else n // 2)
            code = build_bicycle_code(n, code_cfg["bicycle_row_weight"], k,
                                      seed=code_cfg["bicycle_seed"] if seed is None else seed)
            path = os.path.join(out_dir, f"bicycle-{code.n}{STABILIZER_SUFFIX}")
        save_code(code, path)
        print(f"✅ {code.describe()}")
        print(f"💾 Wrote {path}")
    return 0


def cmd_decode(args, config: ConfigManager) -> int:
    from channels.bsc import BscChannel, sample_bsc
    from channels.depolarizing import DepolarizingChannel, sample_depolarizing
    from codes.serialization import load_code
    from codes.stabilizer import StabilizerCode, syndrome
    from decoders.bsc_bp import decode_bsc_syndrome
    from decoders.quaternary_bp import decode_depolarizing
    from decoders.residual import Outcome, classify_residual
    from estimation.estimator import (EstimatorModel, MismatchPolicy, improved_estimate,
                                      sample_estimate)
    from gf2.matrix import BinaryVector, matvec_gf2
    from harness.experiments import clamp_f, clamp_p

    if not args.code:
        raise ConfigError("decode needs --code <file>")
    code = load_code(args.code)
    quantum = isinstance(code, StabilizerCode)
    max_iters = args.max_iters or config.get_service_config("Monte Carlo")["max_iters"]
    seed = args.seed if args.seed is not None else config.get_service_config("Monte Carlo")["master_seed"]

    true_error = None
    if args.syndrome is not None:
        s = BinaryVector.from_text(args.syndrome, length=code.m)
    elif args.f_true is not None:
        if quantum:
            true_error = sample_depolarizing(DepolarizingChannel(args.f_true), code.n, seed)
            s = syndrome(code, true_error)
        else:
            true_error = sample_bsc(BscChannel(args.f_true), code.n, seed)
            s = matvec_gf2(code.h, true_error)
    else:
        raise ConfigError("decode needs --syndrome, or --f-true to sample an error")

    # assumed value: explicit --f-hat, else an estimate drawn around --f-true
    if args.f_hat is not None:
        assumed = args.f_hat
    elif args.f_true is not None and args.probes is not None:
        model = EstimatorModel(args.scheme or "B", args.f_true, args.probes)
        assumed = sample_estimate(model, seed + 1)
    elif args.f_true is not None:
        assumed = args.f_true
    else:
        raise ConfigError("decode needs --f-hat or --f-true for the assumed noise level")
    if args.delta_ratio is not None:
        policy = MismatchPolicy(delta_ratio=args.delta_ratio,
                                f_cap=args.f_cap if args.f_cap is not None else 0.0417)
        assumed = improved_estimate(assumed, policy)

    if quantum:
        result = decode_depolarizing(code, s, clamp_f(assumed), max_iters=max_iters)
        if true_error is not None and result.converged:
            outcome = classify_residual(code, true_error, result.error_estimate)
            result.logical_failure = outcome is Outcome.LOGICAL_FAILURE
    else:
        result = decode_bsc_syndrome(code, s, clamp_p(assumed), max_iters=max_iters)
        if true_error is not None and result.converged:
            result.logical_failure = result.error_estimate != true_error

    record = result.to_record()
    record["assumed"] = assumed
    record["syndrome"] = s.to_string()
    if true_error is not None:
        record["true_error"] = true_error.to_string()
    print(json.dumps(record, indent=2))
    return 0


def _run_sweep(kind_name: str, args, config: ConfigManager, runner, name: str, grid_label: str) -> int:
    from harness.experiment_config import ExperimentKind
    from harness.results import emit_results

    kind = ExperimentKind(kind_name)
    cfg = config.build_experiment_config(kind, collect_overrides(args))
    print(f"🚀 {kind.value}: {len(cfg.grid)} grid points, target {cfg.stop.target_block_errors} block errors")
    result = runner(cfg)
    grid_label = result.extras.get("grid_label", grid_label)
    print_sweep(result, grid_label)
    report_written(emit_results(result, cfg.out_dir, name, svg=cfg.svg, x_label=grid_label))
    return 0


def cmd_sweep_classical(args, config: ConfigManager) -> int:
    from harness.experiments import run_classical_mismatch
    return _run_sweep("classical_mismatch", args, config, run_classical_mismatch, "classical_mismatch", "p_hat")


def cmd_sweep_quantum(args, config: ConfigManager) -> int:
    from harness.experiments import run_quantum_mismatch
    return _run_sweep("quantum_mismatch", args, config, run_quantum_mismatch, "quantum_mismatch", "f_hat")


def cmd_improved(args, config: ConfigManager) -> int:
    from estimation.fisher import Scheme
    from harness.experiments import run_improved_comparison

    scheme = Scheme.parse(args.scheme or config.get_service_config("Improved Decoder")["scheme"])
    return _run_sweep("improved", args, config, run_improved_comparison,
                      f"improved_{scheme.value}", "f")


def cmd_probe_tradeoff(args, config: ConfigManager) -> int:
    from harness.experiments import run_probe_tradeoff
    return _run_sweep("probe_tradeoff", args, config, run_probe_tradeoff, "probe_tradeoff", "N_probes")


def cmd_fit_delta(args, config: ConfigManager) -> int:
    from harness.delta_fit import fit_delta_cost
    from harness.experiment_config import ExperimentKind
    from harness.results import emit_results

    cfg = config.build_experiment_config(ExperimentKind.DELTA_FIT, collect_overrides(args))
    print(f"🚀 delta fit at f={cfg.channel.true_value} over {len(cfg.grid)} ratios")
    fit = fit_delta_cost(cfg)
    print_sweep(fit.cost_curve, "delta")
    a, b, c = fit.fit.coefficients
    print(f"\n📈 BLER(delta) ~ {a:.4g} d^2 + {b:.4g} d + {c:.4g}")
    if fit.fit.interior:
        print(f"🎯 delta* = {fit.delta_star:.4f}")
    else:
        print(f"⚠️  No interior minimum; grid argmin delta* = {fit.delta_star:.4f}")
    report_written(emit_results(fit.cost_curve, cfg.out_dir, "delta_fit", svg=cfg.svg, x_label="delta f / f_hat"))
    return 0


def cmd_fisher(args, config: ConfigManager) -> int:
    from estimation.fisher import fisher_table
    from harness.results import write_table

    section = config.get_service_config("Fisher Table")
    grid = parse_grid(args.grid) or config.section_grid("Fisher Table")
    n_probes = args.probes if args.probes is not None else float(section["n_probes"])
    rows = fisher_table(grid, n_probes)
    out_dir = args.out_dir or config.get_service_config("Monte Carlo")["out_dir"]
    path = os.path.join(out_dir, section["output"])
    write_table(rows, ["f", "f_d", "J_A", "J_B", "sd_A", "sd_B"], path)

    print(f"\n📊 Fisher information, N_probes={n_probes:g}")
    print(f"{'f':>8} {'J_A':>12} {'J_B':>12} {'sd_A':>12} {'sd_B':>12}")
    for row in rows:
        print(f"{row['f']:>8.4f} {row['J_A']:>12.5g} {row['J_B']:>12.5g} {row['sd_A']:>12.4e} {row['sd_B']:>12.4e}")
    print(f"💾 Wrote {path}")
    return 0


HANDLERS = {
    'construct': cmd_construct,
    'decode': cmd_decode,
    'sweep-classical': cmd_sweep_classical,
    'sweep-quantum': cmd_sweep_quantum,
    'improved': cmd_improved,
    'fit-delta': cmd_fit_delta,
    'probe-tradeoff': cmd_probe_tradeoff,
    'fisher': cmd_fisher,
}


def list_commands():
    """List available subcommands and what they write"""
    print("\n🚀 Available Commands:")
    print("=" * 50)
    for name, info in COMMANDS.items():
        print(f"\n• {name}")
        print(f"   📝 {info['description']}")
        for output in info['outputs']:
            print(f"      → {output}")


def show_version():
    """Print version and the current release highlights"""
    from version_info import get_release_highlights, get_version, get_version_info

    info = get_version_info()
    print(f"🧮 QLDPC Mismatch Toolkit v{get_version()} ({info['codename']}, {info['build_date']})")
    for highlight in get_release_highlights():
        print(f"   • {highlight}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', default='qldpc_config.json', help='Configuration file (default: qldpc_config.json)')
    common.add_argument('--code', help='Code file (.alist or .qalist) instead of constructing one')
    common.add_argument('--f-true', type=float, help='True noise level (p for the BSC, f for depolarizing)')
    common.add_argument('--f-hat', type=float, help='Assumed noise level for decode, or a fixed f_hat for sweep-quantum')
    common.add_argument('--policy', choices=['true', 'fixed', 'estimated', 'improved'],
                        help='How sweep-quantum picks the assumed f (default fixed: the grid holds f_hat)')
    common.add_argument('--delta-ratio', type=float, help='Overestimate ratio delta f / f_hat')
    common.add_argument('--f-cap', type=float, help='Upper clamp on the improved estimate')
    common.add_argument('--probes', type=float, help='Number of probe measurements N_m')
    common.add_argument('--scheme', choices=['A', 'B'], help='Probe scheme: A unentangled, B Bell pair')
    common.add_argument('--target-block-errors', type=int, help='Block errors per grid point (default 100)')
    common.add_argument('--max-trials', type=int, help='Trial cap per grid point')
    common.add_argument('--max-iters', type=int, help='Decoder iteration cap (default 200)')
    common.add_argument('--seed', type=int, help='Master seed')
    common.add_argument('--out-dir', help='Output directory')
    common.add_argument('--threads', type=int, help='Worker threads (0 = all CPUs)')
    common.add_argument('--svg', action='store_true', help='Also write an SVG chart')
    common.add_argument('--grid', help='Grid as "a,b,c" or "start:stop:step"')

    parser = argparse.ArgumentParser(
        description="QLDPC Mismatch Toolkit",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python run.py --list                              # List subcommands
  python run.py construct                           # Build default codes
  python run.py sweep-quantum --svg                 # Quantum mismatch sweep
  python run.py improved --scheme A --probes 1      # Improved decoder, one probe each
  python run.py decode --code results/codes/bicycle-1034.qalist --f-true 0.02 --f-hat 0.03
        """
    )
    parser.add_argument('--list', '-l', action='store_true', help='List subcommands and exit')
    parser.add_argument('--version', '-V', action='store_true', help='Show version and release highlights')
    subparsers = parser.add_subparsers(dest='command')
    for name, info in COMMANDS.items():
        sub = subparsers.add_parser(name, parents=[common], help=info['description'])
        if name == 'construct':
            sub.add_argument('--family', choices=['peg', 'bicycle'], help='Build only this family')
            sub.add_argument('--n', type=int, help='Block length')
            sub.add_argument('--k', type=int, help='Target dimension for bicycle codes')
        if name == 'decode':
            sub.add_argument('--syndrome', help='Syndrome as a binary string or 0x-prefixed hex')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point"""
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.version:
        show_version()
        return 0

    if args.list or not args.command:
        list_commands()
        return 0

    print("🧮 QLDPC Mismatch Toolkit")
    print("=" * 50)

    start_time = time.perf_counter()
    try:
        config = get_config_manager(args.config)
        log_cfg = config.get_service_config("Logging")
        logger = setup_application_logging("qldpc", log_cfg["level"], log_cfg["log_dir"])
        status = HANDLERS[args.command](args, config)
        logger.log_shutdown(args.command, time.perf_counter() - start_time)
        return status
    except QldpcError as e:
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as e:
        print(f"❌ I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    except KeyboardInterrupt:
        print("\n🛑 Stopped by user")
        return 130


if __name__ == "__main__":
    sys.exit(main())
