"""Command-line front end.

Subcommands: point (single evaluation), sweep (CSV over aL/c^2 and s),
decompose (plane-wave family tables), modes (mode-function tables for
plotting), check (invariant suites).  Options mirror the config-file keys;
a config file may be given with --config and explicit flags win.

Exit codes: 0 success, 1 check failure, 2 configuration error,
3 numerical-domain error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .checks import format_report, run_checks
from .errors import ConfigurationError, NumericalDomainError
from .modes import MINKOWSKI, RINDLER_I, RINDLER_II, Chart, build_gaussian_detector_mode, build_state_mode, translate_mode
from .params import PhysicalParams, default_grid, parse_config_text
from .pipeline import (
    CSV_HEADER,
    SweepConfig,
    evaluate_point,
    rindler_mode_position_table,
    run_sweep,
    write_csv,
)
from .spectral import build_optimized_mode, decompose_all

_TABLE_HEADER = "coord re_value im_value re_dtime im_dtime"


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=str, default=None, help="key=value config file")
    p.add_argument("--a-over-c2-times-L", dest="a_over_c2_times_L", type=float, default=None)
    p.add_argument("--L", type=float, default=None)
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--s", type=str, default=None, help="squeezing (comma list for sweeps)")
    p.add_argument("--n-char", dest="n_char", type=int, default=None)
    p.add_argument("--k-min-state", dest="k_min_state", type=float, default=None)
    p.add_argument("--k-min-detector", dest="k_min_detector", type=float, default=None)
    p.add_argument("--x-points", dest="x_points", type=int, default=None)
    p.add_argument("--x-extent-factor", dest="x_extent_factor", type=float, default=None)
    p.add_argument("--detector-model", dest="detector_model", type=str, default=None,
                   help="gaussian, optimized, or comma list")
    p.add_argument("--output", type=str, default=None)


def _load_options(args) -> dict:
    opts: dict = {}
    if args.config:
        path = Path(args.config)
        if not path.exists():
            raise ConfigurationError(f"config file not found: {path}")
        opts.update(parse_config_text(path.read_text(encoding="utf-8")))
    for key in ("a_over_c2_times_L", "L", "c", "s", "n_char", "k_min_state",
                "k_min_detector", "x_points", "x_extent_factor",
                "detector_model", "output", "sweep_aL_min", "sweep_aL_max",
                "sweep_aL_points", "sweep_aL_spacing", "modes_aL"):
        val = getattr(args, key, None)
        if val is not None:
            opts[key] = val
    return opts


def _params_from(opts: dict, s: float | None = None) -> PhysicalParams:
    return PhysicalParams.from_aL(
        float(opts.get("a_over_c2_times_L", 0.0)),
        L=float(opts.get("L", 1.0)),
        c=float(opts.get("c", 1.0)),
        n_char=int(opts.get("n_char", 100)),
        s=float(s if s is not None else _scalar_s(opts)),
        k_min_state=opts.get("k_min_state"),
        k_min_detector=opts.get("k_min_detector"),
    )


def _scalar_s(opts: dict) -> float:
    raw = str(opts.get("s", "1.0"))
    parts = [p for p in raw.split(",") if p.strip()]
    if len(parts) != 1:
        raise ConfigurationError("this subcommand needs a single s value")
    return float(parts[0])


def _s_list(opts: dict) -> tuple[float, ...]:
    raw = str(opts.get("s", "1.0"))
    return tuple(float(p) for p in raw.split(",") if p.strip())


def _model_list(opts: dict) -> tuple[str, ...]:
    raw = str(opts.get("detector_model", "gaussian"))
    return tuple(p.strip() for p in raw.split(",") if p.strip())


def _grid_for(opts: dict, params: PhysicalParams):
    return default_grid(
        params,
        x_extent_factor=float(opts.get("x_extent_factor", 16.0)),
        x_points=int(opts.get("x_points", 4096)),
    )


def _cmd_point(args) -> int:
    opts = _load_options(args)
    params = _params_from(opts)
    models = _model_list(opts)
    lines = [CSV_HEADER]
    for model in models:
        row = evaluate_point(params, model, _grid_for(opts, params))
        lines.append(row.to_csv())
    text = "\n".join(lines) + "\n"
    if opts.get("output"):
        Path(opts["output"]).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_sweep(args) -> int:
    opts = _load_options(args)
    out = opts.get("output")
    if not out:
        raise ConfigurationError("sweep requires an output path (--output or output=)")
    if "sweep_aL_min" in opts or "sweep_aL_points" in opts:
        lo = float(opts.get("sweep_aL_min", 1e-3))
        hi = float(opts.get("sweep_aL_max", 1.0))
        n = int(opts.get("sweep_aL_points", 40))
        spacing = str(opts.get("sweep_aL_spacing", "log"))
        if spacing == "log":
            aL_values = SweepConfig.log_spaced(lo, hi, n)
        elif spacing == "linear":
            aL_values = tuple(float(v) for v in np.linspace(lo, hi, n))
        else:
            raise ConfigurationError(f"unknown sweep_aL_spacing {spacing!r}")
    elif "a_over_c2_times_L" in opts:
        aL_values = (float(opts["a_over_c2_times_L"]),)
    else:
        aL_values = ()
    cfg = SweepConfig(
        base=_params_from(opts, s=_s_list(opts)[0] if _s_list(opts) else 1.0),
        aL_values=aL_values,
        s_values=_s_list(opts),
        models=_model_list(opts),
        x_points=int(opts.get("x_points", 4096)),
        x_extent_factor=float(opts.get("x_extent_factor", 16.0)),
        workers=int(args.workers),
    )
    run_sweep(cfg, out)
    return 0


def _write_table(path: Path, header: str, table: np.ndarray) -> None:
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("# " + header + "\n")
        for row in table:
            fh.write(" ".join(f"{v:.11e}" for v in row) + "\n")


def _cmd_decompose(args) -> int:
    opts = _load_options(args)
    params = _params_from(opts)
    if params.a <= 0:
        raise NumericalDomainError("decompose requires a > 0 (Rindler families)")
    grid = _grid_for(opts, params)
    phi = translate_mode(build_state_mode(params, grid), params.c**2 / params.a)
    sc = decompose_all(phi, params, grid)
    stem = Path(opts.get("output") or "decomposition")
    for family in ("mink_pos", "rindI_pos", "rindI_neg", "rindII_pos", "rindII_neg"):
        _write_table(Path(f"{stem}.{family}.txt"), "k re im", sc.family_table(family))
    sys.stdout.write(f"wrote 5 family tables at {stem}.<family>.txt\n")
    return 0


def _cmd_modes(args) -> int:
    opts = _load_options(args)
    raw = str(opts.get("modes_aL", opts.get("a_over_c2_times_L", "0.5")))
    aL_values = [float(v) for v in str(raw).split(",") if str(v).strip()]
    stem = Path(opts.get("output") or "modes")
    written = []
    for aL in aL_values:
        o = dict(opts)
        o["a_over_c2_times_L"] = aL
        params = _params_from(o)
        grid = _grid_for(o, params)
        phi = build_state_mode(params, grid)
        if params.a > 0:
            phi = translate_mode(phi, params.c**2 / params.a)
        tag = f"aL{aL:g}"
        _write_table(Path(f"{stem}.{tag}.state.txt"), _TABLE_HEADER, phi.to_table())
        written.append(f"{stem}.{tag}.state.txt")
        if params.a > 0:
            psi_opt, _ = build_optimized_mode(phi, params, grid)
            # position representation on the state mode's own x > 0 window
            x = phi.coords[phi.coords > 0]
            _write_table(
                Path(f"{stem}.{tag}.optimal.txt"),
                _TABLE_HEADER,
                rindler_mode_position_table(psi_opt, x),
            )
            written.append(f"{stem}.{tag}.optimal.txt")
            psi = build_gaussian_detector_mode(params, grid)
            _write_table(Path(f"{stem}.{tag}.detector.txt"), _TABLE_HEADER, psi.to_table())
            written.append(f"{stem}.{tag}.detector.txt")
    sys.stdout.write("\n".join(written) + "\n")
    return 0


def _cmd_check(args) -> int:
    opts = _load_options(args)
    aL = opts.get("a_over_c2_times_L")
    results, ok = run_checks(args.level, None if aL is None else float(aL))
    sys.stdout.write(format_report(results) + "\n")
    sys.stdout.write("OVERALL: " + ("PASS" if ok else "FAIL") + "\n")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="rindlerkit",
        description="Entanglement degradation for a uniformly accelerated detector",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p_point = sub.add_parser("point", help="evaluate a single parameter point")
    _add_common(p_point)
    p_point.set_defaults(func=_cmd_point)

    p_sweep = sub.add_parser("sweep", help="sweep aL/c^2 and s, write CSV")
    _add_common(p_sweep)
    p_sweep.add_argument("--workers", type=int, default=1)
    p_sweep.add_argument("--sweep-aL-min", dest="sweep_aL_min", type=float, default=None)
    p_sweep.add_argument("--sweep-aL-max", dest="sweep_aL_max", type=float, default=None)
    p_sweep.add_argument("--sweep-aL-points", dest="sweep_aL_points", type=int, default=None)
    p_sweep.add_argument("--sweep-aL-spacing", dest="sweep_aL_spacing", type=str, default=None)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_dec = sub.add_parser("decompose", help="emit plane-wave family tables")
    _add_common(p_dec)
    p_dec.set_defaults(func=_cmd_decompose)

    p_modes = sub.add_parser("modes", help="emit mode-function tables")
    _add_common(p_modes)
    p_modes.add_argument("--modes-aL", dest="modes_aL", type=str, default=None)
    p_modes.set_defaults(func=_cmd_modes)

    p_check = sub.add_parser("check", help="run the invariant suites")
    _add_common(p_check)
    p_check.add_argument("--level", choices=("fast", "full"), default="fast")
    p_check.set_defaults(func=_cmd_check)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    # sweep flags that only exist on some subcommands
    for extra in ("sweep_aL_min", "sweep_aL_max", "sweep_aL_points", "sweep_aL_spacing", "modes_aL"):
        if not hasattr(args, extra):
            setattr(args, extra, None)
    if not hasattr(args, "workers"):
        args.workers = 1
    try:
        return args.func(args)
    except ConfigurationError as exc:
        sys.stderr.write(f"configuration error: {exc}\n")
        return 2
    except NumericalDomainError as exc:
        sys.stderr.write(f"numerical-domain error: {exc}\n")
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
