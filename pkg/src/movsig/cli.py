"""Command-line front end.

Angles are degrees at this layer only. Parameters come from built-in
defaults, then an optional JSON ``--config`` file, then explicit flags.
Exit codes: 0 success, 1 invalid input, 2 I/O failure.
"""

import argparse
import datetime
import json
import sys
from importlib import resources

import jsonschema
import numpy as np

from . import experiments
from .channel import radiation_pattern_los, radiation_pattern_nlos, wavelength
from .freqplan import coverage_los, coverage_nlos, optimal_frequency_los, optimal_frequency_nlos
from .protocol import pilot_sweep, upper_bound
from .reconfig import uniform_precoder
from .results import ResultTable

DEFAULTS = {
    "mode": "los",
    "theta": 0.0,
    "theta_r": 0.0,
    "theta_t": 0.0,
    "fa": 8e9,
    "N": 64,
    "power": 1.0,
    "f_min": 8e9,
    "W": 1.8,
    "S": None,
    "n_freqs": 9,
    "step": 0.25,
    "distance": 10.0,
    "d_r": 5.0,
    "d_t": 10.0,
    "path_gain": True,
    "baselines": None,
    "W_list": [1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8],
    "N_list": [4, 16, 64, 256],
    "trials": 10_000,
    "seed": 0,
}

# parameters each subcommand reads (and echoes into its output header)
PARAMS = {
    "freq-opt": ["mode", "theta", "theta_r", "theta_t", "fa"],
    "coverage": ["mode", "W", "theta_t"],
    "pattern": ["mode", "N", "W", "f_min", "theta_t", "n_freqs", "step"],
    "protocol": ["mode", "N", "power", "f_min", "W", "S", "theta", "theta_r", "theta_t",
                 "distance", "d_r", "d_t", "path_gain"],
    "sweep-los": ["N", "power", "f_min", "W", "S", "distance", "step", "path_gain", "baselines"],
    "sweep-nlos": ["N", "power", "f_min", "W", "S", "d_r", "d_t", "theta_t", "step", "path_gain",
                   "baselines"],
    "average": ["mode", "N", "power", "f_min", "W_list", "S", "distance", "d_r", "d_t", "theta_t",
                "path_gain", "baselines", "trials", "seed"],
    "scaling": ["N_list", "power", "trials", "seed"],
}

_TABLE_COMMANDS = {"pattern", "protocol", "sweep-los", "sweep-nlos", "average", "scaling"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _float_list(text):
    return [float(x) for x in text.split(",") if x]


def _int_list(text):
    return [int(x) for x in text.split(",") if x]


def _str_list(text):
    return [x for x in text.split(",") if x]


_FLAGS = {
    "mode": (("--mode",), dict(choices=["los", "nlos"])),
    "theta": (("--theta",), dict(type=float, help="receiver angle (deg), LoS")),
    "theta_r": (("--theta-r",), dict(type=float, help="receiver angle at the surface (deg)")),
    "theta_t": (("--theta-t",), dict(type=float, help="transmitter angle at the surface (deg)")),
    "fa": (("--fa",), dict(type=float, help="array frequency c/d_A (Hz)")),
    "N": (("--N",), dict(type=int, help="number of elements")),
    "power": (("--power",), dict(type=float, help="transmit power (W)")),
    "f_min": (("--f-min",), dict(type=float, help="lowest usable frequency (Hz)")),
    "W": (("--W",), dict(type=float, help="frequency range width f_max/f_min")),
    "S": (("--S",), dict(type=int, help="number of subchannels (default: 6.25 MHz spacing)")),
    "n_freqs": (("--n-freqs",), dict(type=int, help="number of pattern frequencies")),
    "step": (("--step",), dict(type=float, help="angle grid step (deg)")),
    "distance": (("--distance",), dict(type=float, help="LoS distance (m)")),
    "d_r": (("--d-r",), dict(type=float, help="surface-receiver distance (m)")),
    "d_t": (("--d-t",), dict(type=float, help="surface-transmitter distance (m)")),
    "path_gain": (("--no-path-gain",), dict(action="store_const", const=False,
                                            help="drop free-space path gain")),
    "baselines": (("--baselines",), dict(type=_str_list, help="comma-separated baseline names")),
    "W_list": (("--W-list",), dict(type=_float_list, help="comma-separated W values")),
    "N_list": (("--N-list",), dict(type=_int_list, help="comma-separated element counts")),
    "trials": (("--trials",), dict(type=int, help="Monte-Carlo trials")),
    "seed": (("--seed",), dict(type=int, help="random seed")),
}


def build_parser():
    parser = _Parser(prog="movsig", description="Movable-signal frequency optimisation toolkit.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True
    for command, names in PARAMS.items():
        p = sub.add_parser(command)
        for name in names:
            flags, kwargs = _FLAGS[name]
            p.add_argument(*flags, dest=name, default=None, **kwargs)
        p.add_argument("--config", help="JSON config file (see config.schema.json)")
        p.add_argument("--output", "-o", help="output file (default: stdout)")
        fmt = ["csv", "json"] if command in _TABLE_COMMANDS else ["text", "json"]
        p.add_argument("--format", choices=fmt, default=fmt[0])
        p.add_argument("--reproducible", action="store_true", help="omit the timestamp")
        p.add_argument("--threads", type=int, default=1, help="worker threads")
    return parser


def load_schema():
    return json.loads(resources.files("movsig").joinpath("config.schema.json").read_text())


def resolve(args):
    params = {name: DEFAULTS[name] for name in PARAMS[args.command]}
    if args.config:
        with open(args.config) as fh:
            try:
                cfg = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValueError(f"config is not valid JSON: {exc}") from exc
        try:
            jsonschema.validate(cfg, load_schema())
        except jsonschema.ValidationError as exc:
            raise ValueError(f"config does not match schema: {exc.message}") from exc
        if cfg.get("command", args.command) != args.command:
            raise ValueError(f"config is for {cfg['command']!r}, not {args.command!r}")
        params.update({k: v for k, v in cfg.items() if k in params})
    params.update({k: getattr(args, k) for k in params if getattr(args, k) is not None})
    validate(params)
    return params


def validate(p):
    def need(cond, msg):
        if not cond:
            raise ValueError(msg)

    for key in ("theta", "theta_r", "theta_t"):
        if key in p:
            need(abs(p[key]) <= 90, f"{key} must lie in [-90, 90] degrees")
    for key in ("power", "fa", "f_min", "distance", "d_r", "d_t", "step"):
        if key in p:
            need(p[key] > 0, f"{key} must be positive")
    if "W" in p:
        need(p["W"] >= 1, f"invalid range width: W={p['W']} < 1")
    if "W_list" in p:
        need(len(p["W_list"]) > 0 and all(w >= 1 for w in p["W_list"]), "every W must be >= 1")
    if p.get("S") is not None:
        need(p["S"] >= 2, f"grid too small: S={p['S']} < 2")
    if "N" in p:
        need(p["N"] >= 1, "N must be at least 1")
    if "N_list" in p:
        need(len(p["N_list"]) > 0 and all(n >= 1 for n in p["N_list"]), "every N must be at least 1")
    if "trials" in p:
        need(p["trials"] >= 1, "trials must be at least 1")
    if "n_freqs" in p:
        need(p["n_freqs"] >= 1, "n_freqs must be at least 1")
    if "seed" in p:
        need(0 <= p["seed"] < 2**64, "seed must be an unsigned 64-bit integer")


def _sweep_config(p, mode, **extra):
    return experiments.SweepConfig(
        mode=mode,
        n_elements=p["N"],
        power_w=p["power"],
        distance=p.get("distance", 10.0),
        d_r=p.get("d_r", 5.0),
        d_t=p.get("d_t", 10.0),
        theta_t=float(np.deg2rad(p.get("theta_t", 0.0))),
        f_min=p["f_min"],
        n_subchannels=p["S"],
        baselines=tuple(p.get("baselines") or ()),
        include_path_gain=p["path_gain"],
        **extra,
    )


def cmd_freq_opt(p):
    if p["mode"] == "los":
        f_opt = optimal_frequency_los(np.deg2rad(p["theta"]), p["fa"])
        f_min = p["fa"]
        out = {"mode": "los", "theta_deg": p["theta"]}
    else:
        f_opt = optimal_frequency_nlos(np.deg2rad(p["theta_r"]), np.deg2rad(p["theta_t"]), p["fa"])
        f_min = p["fa"] / (1 + abs(np.sin(np.deg2rad(p["theta_t"]))))
        out = {"mode": "nlos", "theta_r_deg": p["theta_r"], "theta_t_deg": p["theta_t"]}
    out["f_a_hz"] = p["fa"]
    if f_opt.is_any:
        out.update(f_opt_hz="any", resolved_hz=f_min, note="any frequency is optimal; resolved to f_min")
    else:
        out["f_opt_hz"] = f_opt.hz
    return out


def cmd_coverage(p):
    if p["mode"] == "los":
        rep = coverage_los(p["W"])
        out = {"mode": "los", "W": p["W"], "theta_plus_deg": np.rad2deg(rep.theta_plus)}
    else:
        rep = coverage_nlos(p["W"], np.deg2rad(p["theta_t"]))
        out = {"mode": "nlos", "W": p["W"], "theta_t_deg": p["theta_t"],
               "theta_r_minus_deg": np.rad2deg(rep.theta_minus),
               "theta_r_plus_deg": None if rep.theta_plus is None else np.rad2deg(rep.theta_plus)}
    out["coverage_deg"] = np.rad2deg(rep.coverage)
    out["intervals_deg"] = [[float(np.rad2deg(lo)), float(np.rad2deg(hi))] for lo, hi in rep.intervals]
    return {k: float(v) if isinstance(v, np.floating) else v for k, v in out.items()}


def cmd_pattern(p):
    cfg = _sweep_config({**p, "power": 1.0, "S": None, "baselines": None, "path_gain": False},
                        p["mode"], width_ratio=p["W"], angle_step=float(np.deg2rad(p["step"])))
    geom = cfg.geometry()
    freqs = np.linspace(p["f_min"], p["W"] * p["f_min"], p["n_freqs"])
    angles = cfg.angles()
    cols = [np.rad2deg(angles)]
    for f in freqs:
        if p["mode"] == "los":
            cols.append(radiation_pattern_los(angles, uniform_precoder(p["N"]), geom, wavelength(f)))
        else:
            cols.append(radiation_pattern_nlos(angles, cfg.theta_t, geom, wavelength(f)))
    columns = ["angle_deg"] + [f"pattern_f{i + 1}" for i in range(len(freqs))]
    return ResultTable(columns, np.column_stack(cols), {"frequencies_hz": freqs.tolist()})


def cmd_protocol(p):
    angle = p["theta"] if p["mode"] == "los" else p["theta_r"]
    cfg = _sweep_config(p, p["mode"], width_ratio=p["W"])
    scenario = cfg.scenario(float(np.deg2rad(angle)))
    grid = cfg.grid(p["W"])
    result = pilot_sweep(scenario, grid)
    rows = np.column_stack([np.arange(1, grid.size + 1), grid.frequencies, result.profile])
    meta = {
        "selected_subchannel": result.index + 1,
        "selected_frequency_hz": result.frequency,
        "selected_power_w": result.power,
        "upper_bound_w": upper_bound(scenario, p["f_min"]),
        "bandwidth_hz": grid.bandwidth,
    }
    return ResultTable(["subchannel", "frequency_hz", "power_w"], rows, meta)


def cmd_sweep(p, mode, threads):
    cfg = _sweep_config(p, mode, width_ratio=p["W"], angle_step=float(np.deg2rad(p["step"])),
                        threads=threads)
    return experiments.sweep_receiver_angle(cfg)


def cmd_average(p, threads):
    cfg = _sweep_config(p, p["mode"], width_ratios=tuple(p["W_list"]), trials=p["trials"],
                        seed=p["seed"], threads=threads)
    return experiments.average_over_angles(cfg)


def cmd_scaling(p, threads):
    return experiments.scaling_study(p["N_list"], p["trials"], p["seed"], p["power"], threads)


def dispatch(command, p, threads):
    if command == "freq-opt":
        return cmd_freq_opt(p)
    if command == "coverage":
        return cmd_coverage(p)
    if command == "pattern":
        return cmd_pattern(p)
    if command == "protocol":
        return cmd_protocol(p)
    if command in ("sweep-los", "sweep-nlos"):
        return cmd_sweep(p, command.split("-")[1], threads)
    if command == "average":
        return cmd_average(p, threads)
    return cmd_scaling(p, threads)


def _render_text(out):
    lines = []
    for key, value in out.items():
        if isinstance(value, float):
            value = f"{value:.3f}" if key.endswith("_deg") else f"{value:.10g}"
        elif key == "intervals_deg":
            value = " U ".join(f"[{lo:.3f}, {hi:.3f}]" for lo, hi in value)
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def render(command, params, result, fmt, reproducible):
    config = {"command": command, **params}
    if isinstance(result, ResultTable):
        meta = {"config": config}
        meta.update({k: v for k, v in result.metadata.items() if k != "config"})
        if "seed" in params:
            meta["seed"] = params["seed"]
        if not reproducible:
            meta["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
        table = ResultTable(result.columns, result.rows, meta)
        return table.to_csv() if fmt == "csv" else table.to_json()
    if fmt == "json":
        doc = {"config": config, "result": result}
        if not reproducible:
            doc["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
        return json.dumps(doc, sort_keys=True, indent=1) + "\n"
    return _render_text(result)


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if args.threads < 1:
        print("movsig: error: --threads must be at least 1", file=sys.stderr)
        return 1
    try:
        params = resolve(args)
        result = dispatch(args.command, params, args.threads)
        text = render(args.command, params, result, args.format, args.reproducible)
    except OSError as exc:
        print(f"movsig: I/O error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"movsig: error: {exc}", file=sys.stderr)
        return 1
    try:
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"movsig: I/O error: {exc}", file=sys.stderr)
        return 2
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
