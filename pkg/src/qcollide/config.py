"""Experiment specifications: defaults, JSON parsing, fail-fast validation.

A configuration document is a flat JSON object. Unknown keys are rejected
by name and every parameter is range-checked before any computation
starts. Keys not present fall back to the documented defaults of the
experiment kind.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

from .errors import ConfigurationError
from .model import DEFAULT_SEED, ModelConfig
from .transport import DEFAULT_ETA_GRID, DEFAULT_OMEGA_GRID

KIND_NONMARKOV = "nonmarkov-sweep"
KIND_TRANSPORT_SWEEP = "transport-sweep"
KIND_TRANSPORT_EVOLVE = "transport-evolve"
KIND_VALIDATE = "validate"
KINDS = (KIND_NONMARKOV, KIND_TRANSPORT_SWEEP, KIND_TRANSPORT_EVOLVE, KIND_VALIDATE)

DEFAULT_NONMARKOV_OMEGA_GRID = tuple(i / 10 for i in range(11))

_COMMON_KEYS = {"kind", "seed", "out", "format", "threads", "integrity_checks",
                "dt", "j_chain", "j_res"}
_KEYS_BY_KIND = {
    KIND_NONMARKOV: _COMMON_KEYS | {"model", "eta", "steps", "omega_grid", "n_random_pairs"},
    KIND_TRANSPORT_SWEEP: _COMMON_KEYS | {"n_sites", "eta_grid", "omega_grid", "iterations"},
    KIND_TRANSPORT_EVOLVE: _COMMON_KEYS | {"n_sites", "eta", "omega_grid", "max_iterations"},
    KIND_VALIDATE: {"kind"},
}


@dataclass(frozen=True)
class ExperimentSpec:
    """A fully validated, runnable experiment description."""

    kind: str
    model: str
    model_config: ModelConfig | None
    eta_grid: tuple[float, ...]
    omega_grid: tuple[float, ...]
    steps: int
    n_random_pairs: int
    iterations: int
    max_iterations: int
    seed: int
    output_path: str
    output_format: str
    threads: int | None
    integrity_checks: bool


def _require(mapping: dict, key: str, kind_type, default):
    value = mapping.get(key, default)
    try:
        return kind_type(value)
    except (TypeError, ValueError):
        raise ConfigurationError(f"key '{key}' must be of type {kind_type.__name__}, "
                                 f"got {value!r}") from None


def _grid(mapping: dict, key: str, default, lo: float, hi: float, range_name: str
          ) -> tuple[float, ...]:
    raw = mapping.get(key, default)
    if not isinstance(raw, (list, tuple)) or len(raw) == 0:
        raise ConfigurationError(f"key '{key}' must be a non-empty list of numbers")
    values = []
    for i, v in enumerate(raw):
        try:
            x = float(v)
        except (TypeError, ValueError):
            raise ConfigurationError(f"{key}[{i}]={v!r} is not a number") from None
        if not lo <= x <= hi:
            raise ConfigurationError(f"{key}[{i}]={x} outside {range_name}")
        values.append(x)
    return tuple(values)


def _eta(mapping: dict, default: float) -> float:
    eta = _require(mapping, "eta", float, default)
    if not 0.0 <= eta <= math.pi / 2:
        raise ConfigurationError(f"eta={eta} outside [0, pi/2]")
    return eta


def spec_from_mapping(mapping: dict, kind: str | None = None) -> ExperimentSpec:
    """Build a validated spec from a flat mapping, filling in defaults."""
    doc_kind = mapping.get("kind")
    if doc_kind is not None and kind is not None and doc_kind != kind:
        raise ConfigurationError(f"config kind '{doc_kind}' does not match requested '{kind}'")
    kind = kind or doc_kind
    if kind not in KINDS:
        raise ConfigurationError(f"kind must be one of {KINDS}, got {kind!r}")

    allowed = _KEYS_BY_KIND[kind]
    for key in mapping:
        if key not in allowed:
            raise ConfigurationError(f"unknown configuration key '{key}' for kind '{kind}'")

    seed = _require(mapping, "seed", int, DEFAULT_SEED)
    output_format = str(mapping.get("format", "csv"))
    if output_format not in ("csv", "jsonl"):
        raise ConfigurationError(f"format must be 'csv' or 'jsonl', got {output_format!r}")
    output_path = str(mapping.get("out", f"{kind}.{output_format}"))
    threads = mapping.get("threads")
    if threads is not None:
        threads = _require(mapping, "threads", int, threads)
        if threads < 1:
            raise ConfigurationError(f"threads must be >= 1, got {threads}")
    integrity_checks = bool(mapping.get("integrity_checks", True))

    if kind == KIND_VALIDATE:
        return ExperimentSpec(
            kind=kind, model="", model_config=None, eta_grid=(), omega_grid=(),
            steps=0, n_random_pairs=0, iterations=0, max_iterations=0, seed=seed,
            output_path=output_path, output_format=output_format, threads=threads,
            integrity_checks=integrity_checks,
        )

    dt = _require(mapping, "dt", float, 0.01)
    j_chain = mapping.get("j_chain", 10.0)
    j_res = mapping.get("j_res", 1.0)

    if kind == KIND_NONMARKOV:
        model = str(mapping.get("model", "1x1"))
        if model not in ("1x1", "3x3"):
            raise ConfigurationError(f"model must be '1x1' or '3x3', got {model!r}")
        n_sites = 1 if model == "1x1" else 3
        eta = _eta(mapping, math.pi / 2)
        steps = _require(mapping, "steps", int, 20)
        if steps < 1:
            raise ConfigurationError(f"steps must be >= 1, got {steps}")
        omega_grid = _grid(mapping, "omega_grid", list(DEFAULT_NONMARKOV_OMEGA_GRID),
                           0.0, 1.0, "[0, 1]")
        n_random_pairs = _require(mapping, "n_random_pairs", int, 1000)
        if n_random_pairs < 0:
            raise ConfigurationError(f"n_random_pairs must be >= 0, got {n_random_pairs}")
        if n_sites == 1:
            config = ModelConfig(n_sites=1, eta=eta, omega=0.0, dt=dt, steps=steps, seed=seed)
        else:
            config = ModelConfig(n_sites=3, eta=eta, omega=0.0, j_chain=j_chain,
                                 j_res=j_res, dt=dt, steps=steps, seed=seed)
        return ExperimentSpec(
            kind=kind, model=model, model_config=config, eta_grid=(eta,),
            omega_grid=omega_grid, steps=steps, n_random_pairs=n_random_pairs,
            iterations=0, max_iterations=0, seed=seed, output_path=output_path,
            output_format=output_format, threads=threads, integrity_checks=integrity_checks,
        )

    n_sites = _require(mapping, "n_sites", int, 3)
    if n_sites < 2:
        raise ConfigurationError(f"n_sites must be >= 2 for transport, got {n_sites}")
    omega_grid = _grid(mapping, "omega_grid", list(DEFAULT_OMEGA_GRID), 0.0, 1.0, "[0, 1]")

    if kind == KIND_TRANSPORT_SWEEP:
        eta_grid = _grid(mapping, "eta_grid", list(DEFAULT_ETA_GRID),
                         0.0, math.pi / 2, "[0, pi/2]")
        iterations = _require(mapping, "iterations", int, 2)
        if iterations < 0:
            raise ConfigurationError(f"iterations must be >= 0, got {iterations}")
        config = ModelConfig(n_sites=n_sites, eta=eta_grid[0], omega=omega_grid[0],
                             j_chain=j_chain, j_res=j_res, dt=dt, seed=seed)
        return ExperimentSpec(
            kind=kind, model=f"{n_sites}x{n_sites}", model_config=config,
            eta_grid=eta_grid, omega_grid=omega_grid, steps=0, n_random_pairs=0,
            iterations=iterations, max_iterations=0, seed=seed, output_path=output_path,
            output_format=output_format, threads=threads, integrity_checks=integrity_checks,
        )

    eta = _eta(mapping, 0.4)
    max_iterations = _require(mapping, "max_iterations", int, 100)
    if max_iterations < 1:
        raise ConfigurationError(f"max_iterations must be >= 1, got {max_iterations}")
    config = ModelConfig(n_sites=n_sites, eta=eta, omega=omega_grid[0],
                         j_chain=j_chain, j_res=j_res, dt=dt, seed=seed)
    return ExperimentSpec(
        kind=kind, model=f"{n_sites}x{n_sites}", model_config=config, eta_grid=(eta,),
        omega_grid=omega_grid, steps=0, n_random_pairs=0, iterations=0,
        max_iterations=max_iterations, seed=seed, output_path=output_path,
        output_format=output_format, threads=threads, integrity_checks=integrity_checks,
    )


def parse_config(text: str, kind: str | None = None) -> ExperimentSpec:
    """Parse a JSON configuration document into a validated spec."""
    try:
        mapping = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(
            f"config parse error at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    if not isinstance(mapping, dict):
        raise ConfigurationError("config document must be a JSON object")
    return spec_from_mapping(mapping, kind)


def apply_overrides(spec: ExperimentSpec, out: str | None = None, fmt: str | None = None,
                    seed: int | None = None, threads: int | None = None,
                    integrity_checks: bool | None = None) -> ExperimentSpec:
    """Command-line flags win over config-file values."""
    changes: dict = {}
    if out is not None:
        changes["output_path"] = out
    if fmt is not None:
        if fmt not in ("csv", "jsonl"):
            raise ConfigurationError(f"format must be 'csv' or 'jsonl', got {fmt!r}")
        changes["output_format"] = fmt
        if out is None and spec.output_path == f"{spec.kind}.{spec.output_format}":
            changes["output_path"] = f"{spec.kind}.{fmt}"
    if seed is not None:
        changes["seed"] = seed
        if spec.model_config is not None:
            changes["model_config"] = replace(spec.model_config, seed=seed)
    if threads is not None:
        if threads < 1:
            raise ConfigurationError(f"threads must be >= 1, got {threads}")
        changes["threads"] = threads
    if integrity_checks is not None:
        changes["integrity_checks"] = integrity_checks
    return replace(spec, **changes) if changes else spec
