"""Command-line front end.

    cavity-eit spectrum  CONFIG [overrides]   spectra + lineshape reports to files
    cavity-eit linewidth CONFIG [overrides]   FWHM per model on stdout
    cavity-eit rabi      CONFIG [overrides]   wide full-linear scan, peak list
    cavity-eit compare   CONFIG --omegas ...  quantum vs semi-classical ratios

Exit codes: 0 success, 2 configuration error, 3 computation error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .config import ConfigError, RunConfig, parse_config, with_overrides
from .lineshape import LineshapeError, analyze, find_peaks, fwhm_of_central_peak
from .output import spectrum_to_text, write_all
from .params import DetuningGrid, ParameterError
from .polariton import coupling_regime, make_basis
from .quantum import ComputationError, analytic_linewidth
from .semiclassical import SemiClassicalParams, semiclassical_linewidth
from .spectrum import FULL_LINEAR, MODELS, sweep

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_COMPUTE = 3
EXIT_IO = 4

# Geometry used by `compare` when the config has no semiclassical block.
DEFAULT_GEOMETRY = {"length_medium": 1.0, "length_cavity": 1.0, "reflectivity": 0.99, "omega_r": 1.0}


def _finite(x):
    return x if math.isfinite(x) else None


def compute(cfg: RunConfig, workers: int = 1):
    """Spectra, lineshape reports and FWHM comparison for every selected model."""

    def one(model):
        s = sweep(cfg.params, cfg.grid, model, cfg.semiclassical, workers=1)
        try:
            return s, analyze(s)
        except LineshapeError as exc:
            raise ComputationError(f"{model}: {exc}", model=model) from exc

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        results = list(pool.map(one, cfg.models))
    spectra = {m: r[0] for m, r in zip(cfg.models, results)}
    reports = {m: r[1] for m, r in zip(cfg.models, results)}

    fwhm = {m: reports[m].fwhm for m in cfg.models}
    rel = {
        f"{a}/{b}": abs(fwhm[a] - fwhm[b]) / fwhm[a]
        for a, b in itertools.combinations(cfg.models, 2)
    }
    return spectra, reports, {"fwhm": fwhm, "relative_difference": rel}


def _stem(path: str) -> Path:
    p = Path(path)
    return p.with_suffix("") if p.suffix in (".csv", ".json") else p


def artifact_files(cfg: RunConfig, spectra, reports, compare) -> dict:
    stem = _stem(cfg.output_path)
    files = {}
    names = {}
    for model, s in spectra.items():
        path = stem.parent / f"{stem.name}.{model}.{cfg.format}"
        files[path] = spectrum_to_text(s, cfg.format)
        names[model] = path.name

    regime = coupling_regime(cfg.params)
    report = {
        "unit": cfg.unit,
        "config": cfg.snapshot(),
        "analytic_linewidth": analytic_linewidth(cfg.params),
        "coupling_regime": {
            "margin": _finite(regime.margin),
            "label": regime.label,
            "threshold": regime.threshold,
        },
        "spectra": names,
        "reports": {m: r.to_dict() for m, r in reports.items()},
        "compare": compare,
    }
    files[stem.parent / f"{stem.name}.report.json"] = json.dumps(report, indent=1) + "\n"

    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        header = [f"fwhm_{m}" for m in compare["fwhm"]] + [
            f"reldiff_{k}" for k in compare["relative_difference"]
        ]
        w.writerow(header)
        w.writerow(
            [repr(v) for v in compare["fwhm"].values()]
            + [repr(v) for v in compare["relative_difference"].values()]
        )
        files[stem.parent / f"{stem.name}.compare.csv"] = buf.getvalue()
    return files


def _report_error(category: str, exc: Exception, err) -> None:
    print(f"error [{category}]: {exc}", file=err)


def run(cfg: RunConfig, workers: int = 1, out=None, err=None) -> int:
    """Compute and write every artifact for ``cfg``; returns the exit status."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        spectra, reports, compare = compute(cfg, workers)
    except (ComputationError, ParameterError, LineshapeError) as exc:
        _report_error("computation", exc, err)
        return EXIT_COMPUTE
    files = artifact_files(cfg, spectra, reports, compare)
    try:
        write_all(files)
    except OSError as exc:
        _report_error("io", exc, err)
        return EXIT_IO
    for path in files:
        print(path, file=out)
    for model, f in compare["fwhm"].items():
        print(f"fwhm {model} {f!r}", file=out)
    return EXIT_OK


def cmd_linewidth(cfg: RunConfig, out) -> None:
    print(f"analytic 2*kappa_D = {analytic_linewidth(cfg.params)!r} [{cfg.unit}]", file=out)
    for model in cfg.models:
        s = sweep(cfg.params, cfg.grid, model, cfg.semiclassical)
        try:
            f = fwhm_of_central_peak(s)
        except LineshapeError as exc:
            raise ComputationError(f"{model}: {exc}", model=model) from exc
        print(f"{model} fwhm = {f!r} [{cfg.unit}]", file=out)


def cmd_rabi(cfg: RunConfig, out, span: float | None) -> None:
    b = make_basis(cfg.params)
    half = span if span is not None else 1.25 * max(b.collective_rabi, 5 * cfg.params.kappa)
    grid = DetuningGrid(-half, half, max(cfg.grid.points, 10_001))
    s = sweep(cfg.params, grid, FULL_LINEAR)
    step = (grid.max - grid.min) / (grid.points - 1)
    print(f"collective Rabi frequency {b.collective_rabi!r}, grid step {step!r} [{cfg.unit}]", file=out)
    for delta, t in find_peaks(s):
        print(f"peak delta={delta!r} T={t!r}", file=out)


def compare_rows(cfg: RunConfig, omegas) -> list[dict]:
    """Quantum and semi-classical linewidth ratios for each control coupling."""
    rows = []
    for omega in omegas:
        cfg_w = with_overrides(cfg, omega_c=omega)
        p = cfg_w.params
        b = make_basis(p)
        if cfg_w.semiclassical is not None:
            sp = cfg_w.semiclassical
        else:
            sp = SemiClassicalParams.consistent_with(p, **DEFAULT_GEOMETRY)
        ratio, mid = semiclassical_linewidth(sp)
        grid = DetuningGrid(-5 * b.kappa_d, 5 * b.kappa_d, max(cfg.grid.points, 10_001))
        full = fwhm_of_central_peak(sweep(p, grid, FULL_LINEAR)) / (2 * p.kappa)
        rows.append(
            {
                "omega_c": omega,
                "cos2_theta": b.cos2_theta,
                "full_linear_ratio": full,
                "semiclassical_ratio": ratio,
                "tau": mid.tau,
                "eta": mid.eta,
                "relative_difference": abs(ratio - b.cos2_theta) / b.cos2_theta,
            }
        )
    return rows


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cavity-eit", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("config", help="JSON run configuration")
        p.add_argument("--omega-c", type=float)
        p.add_argument("--n-atoms", type=int)
        p.add_argument("--points", type=int)
        p.add_argument("--min", type=float)
        p.add_argument("--max", type=float)
        p.add_argument("--model", action="append", choices=MODELS, help="repeatable")
        p.add_argument("--out", help="output path")
        p.add_argument("--format", choices=("csv", "json"))
        p.add_argument("--workers", type=int, default=1)
        return p

    common(sub.add_parser("spectrum", help="write spectra and lineshape reports"))
    common(sub.add_parser("linewidth", help="print the FWHM of each model"))
    rabi = common(sub.add_parser("rabi", help="scan for the vacuum Rabi side peaks"))
    rabi.add_argument("--span", type=float, help="half-width of the scan (default 1.25x Rabi frequency)")
    cmp_ = common(sub.add_parser("compare", help="quantum vs semi-classical linewidth table"))
    cmp_.add_argument("--omegas", default=None, help="comma-separated control couplings (default: config value)")
    return ap


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        text = Path(args.config).read_text(encoding="utf-8")
    except OSError as exc:
        _report_error("io", exc, err)
        return EXIT_IO
    try:
        cfg = parse_config(text)
        cfg = with_overrides(
            cfg,
            omega_c=args.omega_c,
            n_atoms=args.n_atoms,
            points=args.points,
            min=args.min,
            max=args.max,
            models=args.model,
            output_path=args.out,
            format=args.format,
        )
        omegas = None
        if args.command == "compare":
            raw = args.omegas
            omegas = [cfg.params.omega_c] if raw is None else [float(x) for x in raw.split(",")]
    except (ConfigError, ValueError) as exc:
        _report_error("config", exc, err)
        return EXIT_CONFIG

    if args.command == "spectrum":
        return run(cfg, workers=args.workers, out=out, err=err)
    try:
        if args.command == "linewidth":
            cmd_linewidth(cfg, out)
        elif args.command == "rabi":
            cmd_rabi(cfg, out, args.span)
        else:
            rows = compare_rows(cfg, omegas)
            if cfg.format == "json":
                print(json.dumps(rows, indent=1), file=out)
            else:
                w = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
                w.writeheader()
                for r in rows:
                    w.writerow({k: repr(v) for k, v in r.items()})
    except (ComputationError, ParameterError, LineshapeError) as exc:
        _report_error("computation", exc, err)
        return EXIT_COMPUTE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
