"""Command-line front end.

Subcommands: ``nonmarkov`` (revival-measure sweep over the depolarisation
strength), ``transport-sweep`` (end-to-end coherence over a coupling/
temperature grid), ``transport-evolve`` (coherence time series), and
``validate`` (closed-form oracle battery). Every dataset is written
atomically with a manifest header that suffices to re-run it.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from .backend import ACTIVE_BACKEND
from .config import (
    KIND_NONMARKOV,
    KIND_TRANSPORT_EVOLVE,
    KIND_TRANSPORT_SWEEP,
    KIND_VALIDATE,
    ExperimentSpec,
    apply_overrides,
    parse_config,
    spec_from_mapping,
)
from .errors import ConfigurationError, IntegrityError
from .nonmarkov import sweep_omega
from .output import SCHEMA_VERSION, write_dataset
from .transport import evolve_series, sweep_eta_omega
from .validate import run_all_checks

NONMARKOV_COLUMNS = ("model", "eta", "omega", "steps", "n_value", "pair_descriptor")
TRANSPORT_COLUMNS = ("eta", "omega", "iteration", "coherence_abs",
                     "coherence_real", "coherence_imag")


def _manifest(spec: ExperimentSpec) -> dict:
    manifest = {
        "artifact": "qcollide",
        "version": __version__,
        "schema": SCHEMA_VERSION,
        "backend": ACTIVE_BACKEND,
        "kind": spec.kind,
        "seed": spec.seed,
        "integrity_checks": spec.integrity_checks,
    }
    config = spec.model_config
    if config is not None:
        manifest.update(
            model=spec.model,
            n_sites=config.n_sites,
            j_chain=list(config.j_chain),
            j_res=list(config.j_res),
            dt=config.dt,
            omega_grid=list(spec.omega_grid),
        )
    if spec.kind == KIND_NONMARKOV:
        manifest.update(eta=spec.eta_grid[0], steps=spec.steps,
                        n_random_pairs=spec.n_random_pairs)
    elif spec.kind == KIND_TRANSPORT_SWEEP:
        manifest.update(eta_grid=list(spec.eta_grid), iterations=spec.iterations)
    elif spec.kind == KIND_TRANSPORT_EVOLVE:
        manifest.update(eta=spec.eta_grid[0], max_iterations=spec.max_iterations)
    return manifest


def _run_validate() -> int:
    results = run_all_checks()
    for check in results:
        status = "PASS" if check.passed else "FAIL"
        print(f"{status} {check.name}: {check.detail}")
    return 0 if all(c.passed for c in results) else 1


def run_experiment(spec: ExperimentSpec) -> int:
    """Execute a spec and write its dataset; returns the process exit code."""
    if spec.kind == KIND_VALIDATE:
        return _run_validate()

    threads = spec.threads if spec.threads is not None else os.cpu_count()
    config = spec.model_config

    if spec.kind == KIND_NONMARKOV:
        results = sweep_omega(
            spec.model, spec.eta_grid[0], spec.omega_grid, steps=spec.steps,
            n_random_pairs=spec.n_random_pairs, seed=spec.seed,
            j_chain=config.j_chain or 10.0, j_res=config.j_res or 1.0, dt=config.dt,
            integrity_checks=spec.integrity_checks, max_workers=threads)
        columns = NONMARKOV_COLUMNS
        rows = [
            {"model": r.model, "eta": r.eta, "omega": r.omega, "steps": r.steps,
             "n_value": r.n_value, "pair_descriptor": r.pair_label}
            for r in results
        ]
    else:
        if spec.kind == KIND_TRANSPORT_SWEEP:
            points = sweep_eta_omega(
                spec.eta_grid, spec.omega_grid, iterations=spec.iterations,
                config_base=config, integrity_checks=spec.integrity_checks,
                max_workers=threads)
        else:
            points = evolve_series(
                spec.eta_grid[0], spec.omega_grid, max_iterations=spec.max_iterations,
                config_base=config, integrity_checks=spec.integrity_checks,
                max_workers=threads)
        columns = TRANSPORT_COLUMNS
        rows = [
            {"eta": p.eta, "omega": p.omega, "iteration": p.iteration,
             "coherence_abs": p.coherence_abs,
             "coherence_real": p.coherence_value.real,
             "coherence_imag": p.coherence_value.imag}
            for p in points
        ]

    path = write_dataset(spec.output_path, columns, rows, _manifest(spec),
                         spec.output_format)
    print(f"wrote {len(rows)} rows to {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcollide",
        description="Collision-model simulator for qubit chains with tunable "
                    "non-Markovianity.")
    parser.add_argument("--version", action="version", version=f"qcollide {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for command, kind, as_help in (
        ("nonmarkov", KIND_NONMARKOV, "sweep the revival measure over omega"),
        ("transport-sweep", KIND_TRANSPORT_SWEEP, "coherence over an eta/omega grid"),
        ("transport-evolve", KIND_TRANSPORT_EVOLVE, "coherence time series per omega"),
        ("validate", KIND_VALIDATE, "run the closed-form oracle checks"),
    ):
        p = sub.add_parser(command, help=as_help)
        p.set_defaults(kind=kind)
        p.add_argument("--config", metavar="PATH", help="JSON configuration document")
        p.add_argument("--out", metavar="PATH", help="output dataset path")
        p.add_argument("--format", choices=("csv", "jsonl"), help="dataset format")
        p.add_argument("--seed", type=int, help="RNG seed (documented default if omitted)")
        p.add_argument("--threads", type=int,
                       help="worker threads for grid points (default: all cores)")
        p.add_argument("--no-integrity-checks", action="store_true",
                       help="skip per-phase state validation for speed")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.config is not None:
            try:
                with open(args.config, "r", encoding="utf-8") as handle:
                    text = handle.read()
            except OSError as exc:
                print(f"error: cannot read config {args.config}: {exc}", file=sys.stderr)
                return 4
            spec = parse_config(text, kind=args.kind)
        else:
            spec = spec_from_mapping({}, kind=args.kind)
        spec = apply_overrides(
            spec, out=args.out, fmt=args.format, seed=args.seed, threads=args.threads,
            integrity_checks=False if args.no_integrity_checks else None)
        return run_experiment(spec)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except IntegrityError as exc:
        print(f"error: numerical integrity lost in phase '{exc.phase}': {exc.detail}",
              file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
