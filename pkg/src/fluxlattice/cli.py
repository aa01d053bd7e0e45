"""Command-line interface.

    fluxlattice <spectrum|coupling-sweep|swap|fit|report> --config <path>
                [--plot] [--out <dir>] [--grid a:b:n]

Configs are JSON with unit-suffixed keys; outputs are CSV/JSON/SVG written
atomically into the output directory together with ``manifest.json``.
Exit codes: 0 success, 2 input error, 3 numerical failure.
"""

import argparse
import csv
import hashlib
import io
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field
from datetime import datetime, timezone
from importlib import resources
from pathlib import Path

import numpy as np

from . import __version__
from .array import CouplingNetwork, SubspaceMixingError, assemble, evolve
from .measurement import CrossingData, fit_avoided_crossing, fit_dephasing, isolation_from_fits
from .numerics import ConvergenceError, NaNObjectiveError
from .qubit import DEFAULT_DIM, FluxQubitParams, fit_spectrum, flux_sweep, spectrum
from .svg import line_plot
from .swt import coupler_sweep

SCHEMA = "1"
EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3


class InputError(Exception):
    """Bad configuration, arguments or data file."""


# --- configuration ------------------------------------------------------------


@dataclass
class ProjectConfig:
    qubits: list
    network: CouplingNetwork
    numerics: dict = field(default_factory=dict)
    sweeps: dict = field(default_factory=dict)
    io: dict = field(default_factory=dict)
    digest: str = ""

    @property
    def names(self):
        return [q.name for q in self.qubits]

    def qubit(self, name):
        for q in self.qubits:
            if q.name == name:
                return q
        raise InputError(f"unknown qubit {name!r}; known: {', '.join(self.names)}")

    @property
    def dim(self):
        return int(self.numerics.get("dim", DEFAULT_DIM))

    @property
    def m(self):
        return int(self.numerics.get("m", 5))


def bundled_config_path():
    return resources.files("fluxlattice") / "data" / "device.json"


def _positive(d, key, where):
    if key not in d:
        raise InputError(f"{where}: missing {key!r}")
    try:
        val = float(d[key])
    except (TypeError, ValueError):
        raise InputError(f"{where}: {key!r} must be a number") from None
    if not val > 0:
        raise InputError(f"{where}: {key!r} must be positive, got {val}")
    return val


def parse_config(raw):
    """Validate a config dict and build the physical objects."""
    if str(raw.get("schema")) != SCHEMA:
        raise InputError(f"unsupported config schema {raw.get('schema')!r}, expected {SCHEMA!r}")
    qubits = []
    for k, q in enumerate(raw.get("qubits", [])):
        where = f"qubits[{k}]"
        name = q.get("name")
        if not name:
            raise InputError(f"{where}: missing name")
        qubits.append(FluxQubitParams(
            EJ=_positive(q, "EJ_GHz", where),
            L=_positive(q, "L_nH", where),
            Csigma=_positive(q, "Csigma_fF", where),
            phi_ext=float(q.get("phi_ext_phi0", 0.5)),
            name=str(name),
        ))
    if not qubits:
        raise InputError("config has no qubits")
    names = [q.name for q in qubits]
    if len(set(names)) != len(names):
        raise InputError(f"qubit names must be unique: {names}")
    net = raw.get("network", {})
    pairs = {}
    for k, c in enumerate(net.get("couplings", [])):
        a, b = c.get("between", (None, None))
        if a not in names or b not in names or a == b:
            raise InputError(f"network.couplings[{k}]: bad endpoints {a!r}, {b!r}")
        val = float(c.get("C_fF", -1))
        if val < 0:
            raise InputError(f"network.couplings[{k}]: C_fF must be non-negative")
        pairs[(names.index(a), names.index(b))] = val
    mode = net.get("mode", "effective")
    if mode not in ("effective", "maxwell"):
        raise InputError(f"network.mode must be 'effective' or 'maxwell', got {mode!r}")
    network = CouplingNetwork.chain([q.Csigma for q in qubits], pairs, mode)
    return ProjectConfig(qubits, network, dict(raw.get("numerics", {})),
                         dict(raw.get("sweeps", {})), dict(raw.get("io", {})))


def load_config(path):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc}") from None
    try:
        raw = json.loads(data)
    except json.JSONDecodeError as exc:
        raise InputError(f"config {path} line {exc.lineno}: {exc.msg}") from None
    cfg = parse_config(raw)
    cfg.digest = hashlib.sha256(data).hexdigest()
    return cfg


def parse_grid(text):
    """``a:b:n`` -> n evenly spaced points from a to b inclusive."""
    try:
        a, b, n = text.split(":")
        a, b, n = float(a), float(b), int(n)
    except ValueError:
        raise InputError(f"grid must look like a:b:n, got {text!r}") from None
    if n < 0:
        raise InputError("grid point count must be non-negative")
    return np.linspace(a, b, n)


# --- CSV and atomic output ----------------------------------------------------


def _cell(v):
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return ""
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (list, tuple)):
        return ";".join(str(x) for x in v)
    return str(v)


def format_csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def read_csv(path, required=(), text_columns=()):
    """Read a CSV into ``{column: list}``; empty cells become None.

    Errors carry the 1-based line number of the offending row.
    """
    try:
        fh = open(path, newline="")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    with fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise InputError(f"{path}: empty file") from None
        missing = [c for c in required if c not in header]
        if missing:
            raise InputError(f"{path} line 1: missing column(s) {', '.join(missing)}")
        cols = {h: [] for h in header}
        for row in reader:
            line = reader.line_num
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise InputError(f"{path} line {line}: expected {len(header)} fields, "
                                 f"got {len(row)}")
            for h, c in zip(header, row):
                c = c.strip()
                if h in text_columns:
                    cols[h].append(c)
                elif c == "":
                    cols[h].append(None)
                else:
                    try:
                        cols[h].append(float(c))
                    except ValueError:
                        raise InputError(f"{path} line {line}: column {h!r} has "
                                         f"non-numeric value {c!r}") from None
    return cols


def write_atomic(path, text):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def _json(obj):
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _num(x, scale=1.0):
    """JSON-safe float (None for missing or non-finite)."""
    if x is None:
        return None
    x = float(x) * scale
    return x if math.isfinite(x) else None


@dataclass
class RunManifest:
    command: str
    config_hash: str
    version: str = __version__
    timestamp: str = ""
    outputs: list = field(default_factory=list)

    def write(self, out_dir):
        self.timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
        missing = [p for p in self.outputs if not (Path(out_dir) / p).exists()]
        if missing:
            raise RuntimeError(f"manifest lists missing outputs: {missing}")
        doc = {"schema": SCHEMA, "command": self.command, "config_hash": self.config_hash,
               "version": self.version, "timestamp": self.timestamp, "outputs": self.outputs}
        return write_atomic(Path(out_dir) / "manifest.json", _json(doc))


def workers():
    env = os.environ.get("FLUXLATTICE_THREADS")
    default = min(4, os.cpu_count() or 1)
    if env is None:
        return default
    try:
        return max(1, int(env))
    except ValueError:
        raise InputError(f"FLUXLATTICE_THREADS must be an integer, got {env!r}") from None


def warn(msg):
    print(f"warning: {msg}", file=sys.stderr)


# --- shared physics drivers -----------------------------------------------------


def _chain(cfg):
    if len(cfg.qubits) != 3:
        raise InputError("this command needs a three-element chain (q1, coupler, q3)")
    return tuple(cfg.qubits)


def run_sweep(cfg, grid):
    return coupler_sweep(_chain(cfg), cfg.network, grid, cfg.m, cfg.dim, workers=workers())


def swap_trace(cfg, t_grid, delta_mhz=0.0):
    """Full-model evolution from |1 0 0> with the coupler at ``delta_mhz``."""
    res = run_sweep(cfg, [delta_mhz])
    row = res.rows[0]
    if row.phi_coupler is None:
        raise InputError(f"coupler detuning {delta_mhz} MHz is unreachable")
    q1, c, q3 = _chain(cfg)
    model = assemble((q1.at_flux(res.phi_q1), c.at_flux(row.phi_coupler), q3.at_flux(res.phi_q3)),
                     cfg.network, cfg.m, cfg.dim)
    return evolve(model, (1, 0, 0), t_grid)


def first_minimum(t, p):
    """Time of the first local minimum of ``p``, refined by a parabola."""
    for i in range(1, len(p) - 1):
        if p[i] < p[i - 1] and p[i] <= p[i + 1]:
            denom = p[i - 1] - 2 * p[i] + p[i + 1]
            shift = 0.5 * (p[i - 1] - p[i + 1]) / denom if denom > 0 else 0.0
            return float(t[i] + shift * (t[i + 1] - t[i]))
    return None


def _time_grid(args, cfg):
    if args.grid:
        return parse_grid(args.grid)
    t_max = args.t_max if args.t_max is not None else float(cfg.sweeps.get("swap_t_max_ns", 300))
    dt = args.dt if args.dt is not None else float(cfg.sweeps.get("swap_dt_ns", 0.25))
    if t_max < 0 or dt <= 0:
        raise InputError("need t_max >= 0 and dt > 0")
    return np.linspace(0.0, t_max, int(round(t_max / dt)) + 1)


# --- commands -------------------------------------------------------------------


def cmd_spectrum(args, cfg, out):
    q = cfg.qubit(args.qubit or cfg.qubits[0].name)
    grid = parse_grid(args.grid or cfg.sweeps.get("flux_phi0", "0.45:0.55:101"))
    if grid.size == 0:
        raise InputError("flux grid is empty")
    n_levels = int(cfg.numerics.get("n_levels", 4))
    sweep = flux_sweep(q, grid, n_levels, cfg.dim, workers=workers())
    header = ["phi_ext"] + [f"f0{k}_GHz" for k in range(1, n_levels)]
    rows = [[phi, *lv[1:]] for phi, lv in zip(sweep.phi_ext, sweep.levels)]
    name = f"spectrum_{q.name}.csv"
    write_atomic(out / name, format_csv(header, rows))
    files = [name]
    if args.plot:
        series = [(h.replace("_GHz", ""), sweep.phi_ext, sweep.levels[:, k + 1])
                  for k, h in enumerate(header[1:])]
        svg = f"spectrum_{q.name}.svg"
        write_atomic(out / svg, line_plot(series, "external flux (Phi0)", "frequency (GHz)",
                                          f"spectrum of {q.name}"))
        files.append(svg)
    i = int(np.argmin(sweep.f01))
    print(f"{q.name}: minimum f01 = {sweep.f01[i]:.6f} GHz at phi_ext = {sweep.phi_ext[i]:.6g}")
    return files


SWEEP_HEADER = ["delta_fc_MHz", "g_eff_numeric_MHz", "g_eff_pert_MHz", "Jxx_MHz", "Jyy_MHz",
                "Jzz_MHz", "onoff_ratio_vs_row0", "delta_fc_actual_MHz", "spectrum_error_GHz",
                "flags"]


def sweep_rows(res):
    g0 = res.rows[0].g_eff_numeric if res.rows else None
    rows = []
    for r in res.rows:
        ratio = None
        if r.g_eff_numeric is not None and g0:
            ratio = r.g_eff_numeric / g0
        rows.append([r.delta_fc_mhz, _num(r.g_eff_numeric, 1e3), _num(r.g_eff_perturbative, 1e3),
                     _num(r.Jxx, 1e3), _num(r.Jyy, 1e3), _num(r.Jzz, 1e3), ratio,
                     _num(r.delta_fc_actual_mhz), _num(r.spectrum_error), r.flags])
    return rows


def cmd_coupling_sweep(args, cfg, out):
    grid = parse_grid(args.grid or cfg.sweeps.get("detuning_MHz", "-252:30:48"))
    if grid.size == 0:
        raise InputError("detuning grid is empty")
    res = run_sweep(cfg, grid)
    for r in res.rows:
        # "residual" marks physical Pauli terms outside the allowed set and is
        # only recorded in the CSV
        loud = [f for f in r.flags if f != "residual"]
        if loud:
            warn(f"row {r.delta_fc_mhz:g} MHz: {', '.join(loud)}")
    write_atomic(out / "coupling_sweep.csv", format_csv(SWEEP_HEADER, sweep_rows(res)))
    files = ["coupling_sweep.csv"]
    if args.plot:
        d = res.column("delta_fc_mhz")
        series = [("numeric", d, 1e3 * res.column("g_eff_numeric")),
                  ("perturbative", d, 1e3 * res.column("g_eff_perturbative"))]
        write_atomic(out / "coupling_sweep.svg",
                     line_plot(series, "coupler detuning (MHz)", "g_eff (MHz)",
                               "effective q1-q3 coupling", dashed=("perturbative",)))
        files.append("coupling_sweep.svg")
    return files


def cmd_swap(args, cfg, out):
    t = _time_grid(args, cfg)
    ev = swap_trace(cfg, t, float(cfg.sweeps.get("swap_detuning_MHz", 0.0)))
    p1, p3, leak = ev.excited(0), ev.excited(2), ev.excited(1)
    rows = list(zip(ev.t, p1, p3, leak))
    write_atomic(out / "swap.csv", format_csv(["t_ns", "P_q1", "P_q3", "P_coupler_leakage"], rows))
    files = ["swap.csv"]
    if args.plot:
        write_atomic(out / "swap.svg", line_plot([("P_q1", ev.t, p1), ("P_q3", ev.t, p3)],
                                                 "time (ns)", "excited population",
                                                 "q1-q3 population swap"))
        files.append("swap.svg")
    t_swap = first_minimum(ev.t, p1)
    print("swap time: " + ("not reached" if t_swap is None else f"{t_swap:.3f} ns"))
    return files


def _fit_spectrum(args, cfg, path):
    cols = read_csv(path, required=("phi_ext", "f01_GHz"))
    data = _rows(cols, ("phi_ext", "f01_GHz"), path)
    x0 = cfg.qubit(args.qubit or cfg.qubits[0].name)
    fit = fit_spectrum(data, x0, cfg.dim)
    if fit.degenerate:
        warn("fewer than three distinct flux points; parameters are not identifiable")
    p = fit.params
    return {"params": {"EJ_GHz": p.EJ, "L_nH": p.L, "Csigma_fF": p.Csigma},
            "start": {"EJ_GHz": x0.EJ, "L_nH": x0.L, "Csigma_fF": x0.Csigma},
            "residual_rms_MHz": fit.rms_mhz, "degenerate": fit.degenerate,
            "iterations": fit.nit}


def _fit_crossing(args, cfg, path):
    cols = read_csv(path, required=("control", "f_upper_GHz", "f_lower_GHz"))
    x, up, lo = _rows(cols, ("control", "f_upper_GHz", "f_lower_GHz"), path).T
    try:
        data = CrossingData(x, up, lo)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None
    if args.x0:
        try:
            x0 = tuple(float(v) for v in args.x0.split(","))
        except ValueError:
            raise InputError("--x0 must be g,center,slope") from None
    else:
        split = up - lo
        i = int(np.argmin(split))
        slope = (split[-1] + split[0] - 2 * split[i]) / max(np.ptp(x), 1e-30)
        x0 = (split[i] / 2, x[i], slope)
    fit = fit_avoided_crossing(data, x0)
    if fit.ill_conditioned:
        warn("data cover one side of the crossing only")
    return {"params": {"g_GHz": fit.g, "center": fit.center, "slope_GHz": fit.slope,
                       "mean_offset_GHz": fit.mean_offset, "mean_slope_GHz": fit.mean_slope},
            "uncertainties": {"g_GHz": _num(fit.g_stderr)},
            "residual_rms_GHz": fit.rms, "ill_conditioned": fit.ill_conditioned}


def _dephasing_dict(fit):
    p = fit.pooled
    return {"pooled": {"f_r_GHz": p.f_r, "kappa_MHz": p.kappa, "chi_MHz": p.chi, "eta": p.eta},
            "per_amplitude": [{"A_port": a, "eta": v.eta, "f_r_GHz": v.f_r, "kappa_MHz": v.kappa,
                               "chi_MHz": v.chi} for a, v in sorted(fit.per_amplitude.items())],
            "eta_spread_dB": fit.eta_spread_db, "residual_rms_per_us": fit.rms,
            "flags": fit.flags}


def _fit_dephasing(args, cfg, path):
    need = ("f_d_GHz", "A_port", "gamma_per_us")
    cols = read_csv(path, required=need, text_columns=("series",))
    series = cols.get("series") or ["data"] * len(cols["f_d_GHz"])
    data = _rows(cols, need, path)
    fits = {}
    for name in sorted(set(series)):
        sel = np.array([s == name for s in series])
        fits[name] = fit_dephasing(data[sel])
        for flag in fits[name].flags:
            warn(f"series {name}: {flag}")
    report = {"params": {k: _dephasing_dict(v) for k, v in fits.items()}}
    if len(fits) == 2:
        names = sorted(fits, key=lambda k: fits[k].pooled.eta)
        far, near = (args.far, args.near) if args.near else names
        if far not in fits or near not in fits:
            raise InputError(f"series {far!r}/{near!r} not in data ({', '.join(fits)})")
        iso = isolation_from_fits(fits[far], fits[near])
        report["isolation"] = {"far": far, "near": near, "signed_dB": iso.db,
                               "magnitude_dB": abs(iso.db)}
        report["uncertainties"] = {"isolation_dB": iso.uncertainty_db}
        print(f"isolation {abs(iso.db):.2f} +- {iso.uncertainty_db:.2f} dB")
    return report


def _rows(cols, names, path):
    arr = []
    for k in range(len(cols[names[0]])):
        row = [cols[n][k] for n in names]
        if any(v is None for v in row):
            raise InputError(f"{path} line {k + 2}: empty value in required column")
        arr.append(row)
    if not arr:
        raise InputError(f"{path}: no data rows")
    return np.array(arr, dtype=float)


FITTERS = {"spectrum": _fit_spectrum, "crossing": _fit_crossing, "dephasing": _fit_dephasing}


def cmd_fit(args, cfg, out):
    if not args.data:
        raise InputError("fit needs --data <csv>")
    report = FITTERS[args.kind](args, cfg, args.data)
    digest = hashlib.sha256(Path(args.data).read_bytes()).hexdigest()
    report = {"schema": SCHEMA, "kind": args.kind,
              "provenance": {"data": str(args.data), "data_sha256": digest,
                             "config_hash": cfg.digest},
              **report}
    name = f"fit_{args.kind}.json"
    write_atomic(out / name, _json(report))
    return [name]


def build_report(cfg):
    """Headline numbers for a three-element chain."""
    chain = _chain(cfg)
    sweet = {q.name: spectrum(q.at_flux(0.5), 2, cfg.dim).f01 for q in chain}
    off = float(cfg.sweeps.get("off_detuning_MHz", -252.0))
    grid = parse_grid(cfg.sweeps.get("detuning_MHz", "-252:30:48"))
    grid = np.unique(np.concatenate([grid, [0.0, off]]))
    res = run_sweep(cfg, grid)
    on_row, off_row = res.row_at(0.0), res.row_at(off)
    g_max, g_off = on_row.g_eff_numeric, off_row.g_eff_numeric
    ratio = g_max / g_off if g_max and g_off else None
    jzz = [abs(r.Jzz) / r.g_eff_numeric for r in res.rows
           if r.Jzz is not None and r.g_eff_numeric]
    t_max = float(cfg.sweeps.get("swap_t_max_ns", 300))
    dt = float(cfg.sweeps.get("swap_dt_ns", 0.25))
    t_swap = None
    if g_max:
        ev = swap_trace(cfg, np.linspace(0, t_max, int(round(t_max / dt)) + 1))
        t_swap = first_minimum(ev.t, ev.excited(0))
    return {
        "schema": SCHEMA,
        "sweet_spot_f01_GHz": sweet,
        "resonance_GHz": res.resonance_freq,
        "g_max_MHz": _num(g_max, 1e3),
        "g_off_MHz": _num(g_off, 1e3),
        "off_detuning_MHz": off,
        "off_row_flags": off_row.flags,
        "onoff_ratio": _num(ratio),
        "swap_time_ns": _num(t_swap),
        "swap_time_two_level_ns": _num(1 / (4 * g_max) if g_max else None),
        "jzz_over_g_max": _num(max(jzz)) if jzz else None,
        "zz_shift_off_kHz": _num(4 * off_row.Jzz, 1e6) if off_row.Jzz is not None else None,
        "zz_shift_label": "model-derived (4 J_zz)",
        "config_hash": cfg.digest,
    }


def cmd_report(args, cfg, out):
    report = build_report(cfg)
    write_atomic(out / "report.json", _json(report))
    return ["report.json"]


COMMANDS = {"spectrum": cmd_spectrum, "coupling-sweep": cmd_coupling_sweep, "swap": cmd_swap,
            "fit": cmd_fit, "report": cmd_report}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def build_parser():
    p = _Parser(prog="fluxlattice", description=__doc__.split("\n\n")[0])
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("kind", nargs="?", choices=sorted(FITTERS), help="fit kind (fit only)")
    p.add_argument("--config", default=None, help="JSON config (default: bundled device)")
    p.add_argument("--out", default=None, help="output directory")
    p.add_argument("--plot", action="store_true", help="also write SVG figures")
    p.add_argument("--grid", default=None, help="a:b:n sweep grid (flux, MHz or ns)")
    p.add_argument("--qubit", default=None, help="qubit name for spectrum / spectrum fit")
    p.add_argument("--t-max", type=float, default=None, help="swap duration in ns")
    p.add_argument("--dt", type=float, default=None, help="swap time step in ns")
    p.add_argument("--data", default=None, help="CSV data file for fit")
    p.add_argument("--x0", default=None, help="crossing fit start g,center,slope")
    p.add_argument("--near", default=None, help="dephasing series of the near resonator")
    p.add_argument("--far", default=None, help="dephasing series of the far resonator")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return p


def _join_grid(argv):
    """Let ``--grid -252:30:48`` through; argparse would read it as an option."""
    out, it = [], iter(argv)
    for a in it:
        if a == "--grid":
            nxt = next(it, None)
            out.append("--grid" if nxt is None else f"--grid={nxt}")
        else:
            out.append(a)
    return out


def main(argv=None):
    try:
        argv = sys.argv[1:] if argv is None else list(argv)
        args = build_parser().parse_args(_join_grid(argv))
        if args.command == "fit" and args.kind is None:
            raise InputError("fit needs a kind: spectrum, crossing or dephasing")
        if bool(args.near) != bool(args.far):
            raise InputError("--near and --far go together")
        cfg = load_config(args.config or bundled_config_path())
        out = Path(args.out or cfg.io.get("out", "fluxlattice_out"))
        files = COMMANDS[args.command](args, cfg, out)
        RunManifest(args.command, cfg.digest, outputs=files).write(out)
        for f in files:
            print(out / f)
        return EXIT_OK
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ConvergenceError, NaNObjectiveError, SubspaceMixingError,
            np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
