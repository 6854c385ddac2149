"""Command-line front end.

Every command reads one JSON config file::

    {
      "params": {"a": "3", "b": "1", "c": "10", "alpha": "2", "beta": "1", "gamma": "10"},
      "backend": "float64",
      "tolerance": {"eps_fixed": 1e-12, "eps_conv": 1e-10, "big": 1e12},
      "trajectory": {"initial": ["1/2", "1/2"], "max_iter": 10000, "output": "orbit.csv"}
    }

and writes deterministic text files. Numbers may be JSON numbers or
strings (``"0.3"``, ``"80/21"``); the rational backend accepts only ints
and strings so that no value passes through binary floating point.

Exit codes: 0 ok, 2 bad config, 3 zero denominator, 4 undefined image,
5 not applicable.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .dynamics import DEFAULT_MAX_ITER, iterate
from .equilibria import classify_square, quadrant_fixed_points, square_fixed_points
from .errors import InvalidParams, NotApplicable, UndefinedImage, ZeroDenominator
from .geometry import BasinLabel, scan_basins, stable_boundary, unstable_curve
from .model import FitnessParams, check_square, reduce_params
from .numerics import Backend, Tolerance, format_scalar, to_scalar

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_ZERO_DENOMINATOR = 3
EXIT_UNDEFINED_IMAGE = 4
EXIT_NOT_APPLICABLE = 5

GRAY = {
    BasinLabel.TO_Z0: 0,
    BasinLabel.UNRESOLVED: 64,
    BasinLabel.TO_Z2: 128,
    BasinLabel.TO_OTHER: 192,
    BasinLabel.TO_Z3: 255,
}
LABEL_NAMES = {
    BasinLabel.TO_Z0: "ToZ0",
    BasinLabel.TO_Z3: "ToZ3",
    BasinLabel.TO_Z2: "ToZ2",
    BasinLabel.TO_OTHER: "ToOther",
    BasinLabel.UNRESOLVED: "Unresolved",
}

_PARAM_KEYS = ("a", "b", "c", "alpha", "beta", "gamma")
_BLOCK_KEYS = {
    "fixed_points": {"output"},
    "trajectory": {"initial", "max_iter", "output"},
    "basin": {"n", "max_iter", "workers", "output", "legend"},
    "curve": {"anchor", "kind", "steps", "h", "per_domain", "rays", "max_iter", "output"},
}
_TOP_KEYS = {"params", "backend", "tolerance"} | set(_BLOCK_KEYS)


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    params: FitnessParams
    backend: Backend
    tolerance: Tolerance
    blocks: dict = field(default_factory=dict)

    def block(self, name: str) -> dict:
        return self.blocks.get(name, {})


def _scalar(value, backend, what):
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise ConfigError(f"{what}: expected a number or numeric string")
    if backend is Backend.RATIONAL and isinstance(value, float):
        raise ConfigError(f"{what}: the rational backend needs an int or a string, got {value!r}")
    try:
        return to_scalar(value, backend)
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"{what}: {exc}") from None


def _check_keys(obj, allowed, where):
    if not isinstance(obj, dict):
        raise ConfigError(f"{where} must be an object")
    unknown = sorted(set(obj) - set(allowed))
    if unknown:
        raise ConfigError(f"unknown key(s) in {where}: {', '.join(unknown)}")


def parse_config(text: str) -> RunConfig:
    """Parse and validate a JSON config document."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}") from None
    _check_keys(raw, _TOP_KEYS, "config")
    try:
        backend = Backend(raw.get("backend", "float64"))
    except ValueError:
        raise ConfigError(f"unknown backend {raw.get('backend')!r}") from None

    params = raw.get("params")
    _check_keys(params, _PARAM_KEYS, "params")
    missing = [k for k in _PARAM_KEYS if k not in params]
    if missing:
        raise ConfigError(f"params missing: {', '.join(missing)}")
    values = [_scalar(params[k], backend, f"params.{k}") for k in _PARAM_KEYS]
    try:
        fp = FitnessParams.of(*values, backend=backend)
    except InvalidParams as exc:
        raise ConfigError(str(exc)) from None

    tol_raw = raw.get("tolerance", {})
    _check_keys(tol_raw, ("eps_fixed", "eps_conv", "big"), "tolerance")
    try:
        tol = Tolerance(**{k: float(_scalar(v, Backend.FLOAT, f"tolerance.{k}")) for k, v in tol_raw.items()})
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    blocks = {}
    for name, keys in _BLOCK_KEYS.items():
        if name in raw:
            _check_keys(raw[name], keys, name)
            blocks[name] = raw[name]
    return RunConfig(fp, backend, tol, blocks)


def _int_field(block, key, default, lo=None, hi=None):
    v = block.get(key, default)
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"{key} must be an integer")
    if (lo is not None and v < lo) or (hi is not None and v > hi):
        raise ConfigError(f"{key} must lie in [{lo}, {hi}]")
    return v


def _fmt(v) -> str:
    return "" if v is None else format_scalar(v)


def _csv_writer(buf):
    return csv.writer(buf, lineterminator="\n")


# -- fixed points -------------------------------------------------------------

def render_fixed_points(cfg: RunConfig) -> str:
    p, tol = cfg.params, cfg.tolerance
    buf = io.StringIO()
    buf.write("# fixed-point candidates of the evolution map\n")
    buf.write("# params: " + " ".join(f"{k}={format_scalar(v)}" for k, v in zip(_PARAM_KEYS, p)) + "\n")
    buf.write(f"# backend: {cfg.backend.value}\n")
    w = _csv_writer(buf)
    w.writerow(["label", "space", "u", "v", "in_domain", "residual", "lambda1", "lambda2", "stability", "note"])
    for rep in square_fixed_points(p, tol):
        loc = rep.location or (None, None)
        eig = rep.eigen
        w.writerow([
            rep.label, "square", _fmt(loc[0]), _fmt(loc[1]), _fmt(rep.in_domain), _fmt(rep.residual),
            _fmt(eig.lambda1 if eig else None), _fmt(eig.lambda2 if eig else None),
            rep.stability.value if rep.stability else "", rep.note,
        ])
    try:
        r = reduce_params(p)
    except ZeroDenominator as exc:
        buf.write(f"# odds rows omitted: {exc.name} = 0, odds coordinates undefined\n")
        return buf.getvalue()
    for rep in quadrant_fixed_points(r, tol):
        loc = rep.location or (None, None)
        eig = rep.eigen
        w.writerow([
            rep.label, "odds", _fmt(loc[0]), _fmt(loc[1]), _fmt(rep.in_domain), _fmt(rep.residual),
            _fmt(eig.lambda1 if eig else None), _fmt(eig.lambda2 if eig else None),
            rep.stability.value if rep.stability else "", rep.note,
        ])
    return buf.getvalue()


# -- trajectory -----------------------------------------------------------------

def render_trajectory(cfg: RunConfig) -> tuple[str, int]:
    block = cfg.block("trajectory")
    init = block.get("initial")
    if not isinstance(init, list) or len(init) != 2:
        raise ConfigError("trajectory.initial must be a list [x, y]")
    z0 = tuple(_scalar(v, cfg.backend, "trajectory.initial") for v in init)
    try:
        z0 = check_square(z0)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    max_iter = _int_field(block, "max_iter", DEFAULT_MAX_ITER, 0)
    buf = io.StringIO()
    buf.write("n,x,y\n")
    try:
        traj = iterate(cfg.params, z0, max_iter, cfg.tolerance)
    except UndefinedImage as exc:
        for k, z in enumerate(exc.states):
            buf.write(f"{k},{format_scalar(z[0])},{format_scalar(z[1])}\n")
        buf.write(f"# verdict: UndefinedImage(step={exc.step},coordinate={exc.coordinate})\n")
        return buf.getvalue(), EXIT_UNDEFINED_IMAGE
    for k, z in enumerate(traj.states):
        buf.write(f"{k},{format_scalar(z[0])},{format_scalar(z[1])}\n")
    buf.write(f"# verdict: {traj.verdict}\n")
    return buf.getvalue(), EXIT_OK


# -- basin ----------------------------------------------------------------------

def render_pgm(labels) -> str:
    """Plain PGM with the fixed gray levels; first image row is the top edge (y = 1)."""
    n_rows, n_cols = labels.shape
    out = [f"P2\n{n_cols} {n_rows}\n255\n"]
    for j in range(n_rows - 1, -1, -1):
        line = ""
        for value in labels[j]:
            tok = str(GRAY[BasinLabel(int(value))])
            if line and len(line) + 1 + len(tok) > 70:
                out.append(line + "\n")
                line = tok
            else:
                line = f"{line} {tok}" if line else tok
        out.append(line + "\n")
    return "".join(out)


def render_legend(raster) -> str:
    loc = {rep.label: rep.location for rep in raster.fixed_points}
    buf = io.StringIO()
    w = _csv_writer(buf)
    w.writerow(["gray", "label", "x", "y"])
    for label, fp_label in ((BasinLabel.TO_Z0, "z0"), (BasinLabel.UNRESOLVED, None),
                            (BasinLabel.TO_Z2, "z2"), (BasinLabel.TO_Z3, "z3")):
        z = loc.get(fp_label) if fp_label else None
        w.writerow([GRAY[label], LABEL_NAMES[label], _fmt(z[0] if z else None), _fmt(z[1] if z else None)])
    for k, z in enumerate(raster.others):
        w.writerow([GRAY[BasinLabel.TO_OTHER], f"ToOther[{k}]", _fmt(z[0]), _fmt(z[1])])
    return buf.getvalue()


def run_basin(cfg: RunConfig):
    block = cfg.block("basin")
    n = _int_field(block, "n", 101, 2, 4096)
    max_iter = _int_field(block, "max_iter", DEFAULT_MAX_ITER, 0)
    workers = _int_field(block, "workers", 1, 1)
    return scan_basins(cfg.params, n, cfg.tolerance, max_iter=max_iter, workers=workers)


# -- curve ----------------------------------------------------------------------

def render_curve(cfg: RunConfig) -> str:
    block = cfg.block("curve")
    anchor_label = block.get("anchor", "z2")
    kind = block.get("kind", "unstable")
    if anchor_label not in ("z0", "z2"):
        raise ConfigError("curve.anchor must be 'z0' or 'z2'")
    if kind not in ("unstable", "stable"):
        raise ConfigError("curve.kind must be 'unstable' or 'stable'")
    anchor = classify_square(cfg.params, anchor_label, cfg.tolerance)
    if kind == "unstable":
        h = float(_scalar(block.get("h", "1e-6"), Backend.FLOAT, "curve.h"))
        if not h > 0:
            raise ConfigError("curve.h must be positive")
        curve = unstable_curve(
            cfg.params, anchor,
            steps=_int_field(block, "steps", 30, 0),
            h=h,
            tol=cfg.tolerance,
            per_domain=_int_field(block, "per_domain", 8, 1),
        )
    else:
        curve = stable_boundary(
            cfg.params, anchor,
            rays=_int_field(block, "rays", 16, 1),
            tol=cfg.tolerance,
            max_iter=_int_field(block, "max_iter", DEFAULT_MAX_ITER, 0),
        )
    buf = io.StringIO()
    buf.write(f"# {kind} curve of {anchor.label} ({anchor.stability.value})\n")
    buf.write("k,x,y,arc\n")
    for b, (pts, arc) in enumerate(zip(curve.branches, curve.arcs)):
        note = f" termination={curve.terminations[b]}" if curve.terminations else ""
        if curve.escape_steps:
            esc = curve.escape_steps[b]
            note += f" escape_step={'none' if esc is None else esc}"
        buf.write(f"# branch {b}:{note}\n")
        for k, (z, s) in enumerate(zip(pts, arc)):
            buf.write(f"{k},{format_scalar(float(z[0]))},{format_scalar(float(z[1]))},{format_scalar(s)}\n")
    if curve.skipped_rays:
        buf.write("# rays without bracket: " + " ".join(str(k) for k in curve.skipped_rays) + "\n")
    return buf.getvalue()


# -- entry point ----------------------------------------------------------------

def _output_path(args, block, default_suffix):
    out = args.output or block.get("output")
    if not out:
        raise ConfigError(f"no output path (give -o or an 'output' key); suggested suffix {default_suffix}")
    return Path(out)


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dioecy", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("fixed-points", "tabulate fixed-point candidates and their types"),
        ("trajectory", "iterate from an initial state and write the orbit as CSV"),
        ("basin", "raster of orbit limits as a plain PGM plus legend CSV"),
        ("curve", "stable or unstable curve of z0 / z2 as a CSV polyline"),
    ):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("config", type=Path, help="JSON config file")
        sp.add_argument("-o", "--output", type=Path, default=None, help="output path (overrides config)")
        if name == "basin":
            sp.add_argument("--legend", type=Path, default=None, help="legend CSV path")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = parse_config(Path(args.config).read_text())
        if args.command == "fixed-points":
            path = _output_path(args, cfg.block("fixed_points"), ".csv")
            _write(path, render_fixed_points(cfg))
            return EXIT_OK
        if args.command == "trajectory":
            path = _output_path(args, cfg.block("trajectory"), ".csv")
            text, code = render_trajectory(cfg)
            _write(path, text)
            if code == EXIT_UNDEFINED_IMAGE:
                print("error: evolution map undefined along the orbit", file=sys.stderr)
            return code
        if args.command == "basin":
            block = cfg.block("basin")
            path = _output_path(args, block, ".pgm")
            legend = args.legend or block.get("legend") or path.with_suffix(".csv")
            raster = run_basin(cfg)
            _write(path, render_pgm(raster.labels))
            _write(Path(legend), render_legend(raster))
            return EXIT_OK
        if args.command == "curve":
            path = _output_path(args, cfg.block("curve"), ".csv")
            _write(path, render_curve(cfg))
            return EXIT_OK
    except (ConfigError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ZeroDenominator as exc:
        print(f"zero denominator: {exc}", file=sys.stderr)
        return EXIT_ZERO_DENOMINATOR
    except UndefinedImage as exc:
        print(f"undefined image: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED_IMAGE
    except NotApplicable as exc:
        cls = exc.classification.value if exc.classification else "unclassified"
        print(f"not applicable ({cls}): {exc}", file=sys.stderr)
        return EXIT_NOT_APPLICABLE
    return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
