"""Command-line front end.

Subcommands: simulate, sweep, mc, fit, optimize, compare, noise.  All
results go to standard output or --out as byte-stable delimited text;
curve-producing subcommands can additionally render a figure with --plot.
Exit status is 0 on success, 2 on usage errors, 1 on computation errors
(bad config files, invalid parameter combinations, fit failures).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .config import ConfigError, read_config
from .curves import (
    format_number,
    mc_to_csv,
    noise_curve,
    noise_to_csv,
    outcome_row,
    rows_to_csv,
    sweep,
)
from .design import LossBudget, fit_losses, optimal_cycles
from .engine import SystemConfig, default_rotation_step, run_exact, run_monte_carlo
from .models import detector_adjust, ev_probabilities, lossy_closed_form, resonance_efficiency

COMPARE_HEADER = "scheme,detail,p_qi,p_abs,eta"
_EV_GRID = 200_001


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _load_config(args: argparse.Namespace) -> SystemConfig:
    config = read_config(args.config)
    n = getattr(args, "n", None)
    if n is not None:
        # --n repaces the rotation too; a custom dtheta belongs in the file
        cycle = replace(config.cycle, dtheta=default_rotation_step(n))
        config = replace(config, n_cycles=n, cycle=cycle)
    eps = getattr(args, "detector_eff", None)
    if eps is not None:
        config = replace(config, detector_eff=eps, filter_t=1.0)
    return config


def _net_efficiency(config: SystemConfig) -> float:
    return config.detector_eff * config.filter_t


def _budget(config: SystemConfig) -> LossBudget:
    cycle = config.cycle
    return LossBudget(cycle.t_empty, cycle.t_obj_arm, cycle.t_rec)


def cmd_simulate(args: argparse.Namespace) -> int:
    config = _load_config(args)
    row = outcome_row(config.n_cycles, run_exact(config))
    _emit(rows_to_csv([row]), args.out)
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    config = _load_config(args)
    rows = sweep(config, args.n_min, args.n_max)
    _emit(rows_to_csv(rows), args.out)
    if args.plot:
        from .plots import plot_sweep

        plot_sweep(rows, args.plot)
    return 0


def cmd_mc(args: argparse.Namespace) -> int:
    config = _load_config(args)
    outcome = run_monte_carlo(config, trials=args.trials, seed=args.seed)
    _emit(mc_to_csv(config.n_cycles, outcome), args.out)
    return 0


def _read_fit_data(path: str) -> list[tuple[int, float, float]]:
    rows: list[tuple[int, float, float]] = []
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    seen_header = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not seen_header:
            if line != "N,eta,sigma":
                raise ValueError(f"{path}:{lineno}: expected header 'N,eta,sigma'")
            seen_header = True
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 3:
            raise ValueError(f"{path}:{lineno}: expected three comma-separated fields")
        try:
            rows.append((int(parts[0]), float(parts[1]), float(parts[2])))
        except ValueError:
            raise ValueError(f"{path}:{lineno}: malformed data row {line!r}") from None
    if not seen_header:
        raise ValueError(f"{path}: missing header 'N,eta,sigma'")
    return rows


def cmd_fit(args: argparse.Namespace) -> int:
    data = _read_fit_data(args.data)
    result = fit_losses(data, t_obj_fixed=args.t_obj)
    text = "".join([
        f"t_cycl = {format_number(result.t_cycl)}\n",
        f"uncertainty = {format_number(result.uncertainty)}\n",
        f"residual_sum_squares = {format_number(result.residual_sum_squares)}\n",
        f"iterations = {result.iterations}\n",
    ])
    _emit(text, args.out)
    if args.plot:
        from .plots import plot_fit

        plot_fit(data, result, args.t_obj, args.plot)
    return 0


def cmd_optimize(args: argparse.Namespace) -> int:
    config = _load_config(args)
    n_star, eta_star, at_boundary = optimal_cycles(_budget(config), args.n_max)
    eta_adjusted = detector_adjust(eta_star, _net_efficiency(config))
    text = "".join([
        f"n_star = {n_star}\n",
        f"eta_star = {format_number(eta_star)}\n",
        f"eta_adjusted = {format_number(eta_adjusted)}\n",
        f"at_boundary = {'true' if at_boundary else 'false'}\n",
    ])
    _emit(text, args.out)
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    config = _load_config(args)
    budget = _budget(config)
    n_star, _, _ = optimal_cycles(budget, args.n_max)
    zeno = lossy_closed_form(budget.at(n_star))

    best_t1, best = 0.0, -1.0
    for i in range(_EV_GRID):
        t1 = (1.0 - 1e-6) * i / (_EV_GRID - 1)
        ev = ev_probabilities(t1)
        if ev.eta > best:
            best_t1, best = t1, ev.eta
    ev = ev_probabilities(best_t1)

    res = resonance_efficiency(args.resonance_r)
    entries = [
        ("zeno", f"N={n_star}", zeno),
        ("two-beamsplitter", f"t1={best_t1:.6f}", ev),
        ("resonance", f"R={format_number(args.resonance_r)}", res),
    ]
    lines = [COMPARE_HEADER]
    for name, detail, cf in entries:
        lines.append(",".join([name, detail, format_number(cf.p_qi),
                               format_number(cf.p_abs), format_number(cf.eta)]))
    _emit("\n".join(lines) + "\n", args.out)
    if args.plot:
        from .plots import plot_compare

        plot_compare([(name, detail, cf.eta) for name, detail, cf in entries], args.plot)
    return 0


def cmd_noise(args: argparse.Namespace) -> int:
    config = _load_config(args)
    points = noise_curve(config, args.n_min, args.n_max)
    _emit(noise_to_csv(points), args.out)
    if args.plot:
        from .plots import plot_noise

        plot_noise(points, args.plot)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zenosim",
        description="Simulate and design high-efficiency quantum interrogation "
                    "in a recycled polarization interferometer.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="subcommand")

    def add(name: str, func, help_text: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=func)
        sp.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")
        return sp

    def add_config(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--config", metavar="PATH", required=True,
                        help="run configuration file")

    def add_plot(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--plot", metavar="PATH", help="also render a figure to PATH")

    sp = add("simulate", cmd_simulate, "exact single run, one CSV row")
    add_config(sp)
    sp.add_argument("--n", type=int, help="override the cycle count")
    sp.add_argument("--detector-eff", type=float, help="override the net detection efficiency")

    sp = add("sweep", cmd_sweep, "exact efficiency curve over a range of N")
    add_config(sp)
    sp.add_argument("--n-min", type=int, default=1, help="first cycle count (default 1)")
    sp.add_argument("--n-max", type=int, required=True, help="last cycle count")
    sp.add_argument("--detector-eff", type=float, help="override the net detection efficiency")
    add_plot(sp)

    sp = add("mc", cmd_mc, "Monte Carlo run with statistical errors")
    add_config(sp)
    sp.add_argument("--trials", type=int, help="number of trials (default from config)")
    sp.add_argument("--seed", type=int, help="random seed (default from config)")
    sp.add_argument("--n", type=int, help="override the cycle count")
    sp.add_argument("--detector-eff", type=float, help="override the net detection efficiency")

    sp = add("fit", cmd_fit, "fit the per-cycle survival to measured efficiencies")
    sp.add_argument("--data", metavar="PATH", required=True,
                    help="CSV file with header N,eta,sigma")
    sp.add_argument("--t-obj", type=float, default=1.0,
                    help="fixed object-arm transmission (default 1)")
    add_plot(sp)

    sp = add("optimize", cmd_optimize, "best cycle count for a loss budget")
    add_config(sp)
    sp.add_argument("--n-max", type=int, default=1000, help="scan limit (default 1000)")
    sp.add_argument("--detector-eff", type=float, help="override the net detection efficiency")

    sp = add("compare", cmd_compare, "best efficiency of the three schemes")
    add_config(sp)
    sp.add_argument("--n-max", type=int, default=1000, help="scan limit (default 1000)")
    sp.add_argument("--resonance-r", type=float, default=0.99,
                    help="cavity mirror reflectivity for the resonance row (default 0.99)")
    add_plot(sp)

    sp = add("noise", cmd_noise, "false-positive curve of the empty system")
    add_config(sp)
    sp.add_argument("--n-min", type=int, default=1, help="first cycle count (default 1)")
    sp.add_argument("--n-max", type=int, required=True, help="last cycle count")
    add_plot(sp)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())
