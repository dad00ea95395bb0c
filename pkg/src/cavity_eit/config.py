"""Run configuration: one JSON document per run.

Schema (keys not listed here are rejected)::

    {
      "params": {"n_atoms": 400, "g": 1, "omega_c": 5, "kappa": 1,
                 "gamma_e": 1, "gamma_s": 0},
      "grid": {"min": -3, "max": 3, "points": 6001},
      "models": ["analytic-dark", "full-linear"],
      "semiclassical": {...},          # required iff "semiclassical" in models
      "output_path": "out/ref.csv",
      "format": "csv",                 # or "json"; default "csv"
      "unit": "kappa"                  # label for every rate; default "kappa"
    }

The ``semiclassical`` block takes ``length_medium``, ``length_cavity``,
``reflectivity``, ``omega_r`` and ``chi_prefactor`` (a number, or the string
``"consistent"`` to pick the prefactor that matches the quantum linewidth).
``gamma_e``, ``gamma_s`` and ``omega_c`` default to the values in ``params``,
``probe_frequency`` to ``omega_r`` and ``c_light`` to 1.
"""

from __future__ import annotations

import json
import numbers
from dataclasses import dataclass

from .params import DEFAULT_UNIT, AtomCavityParams, DetuningGrid, ParameterError, validate_params
from .semiclassical import SemiClassicalParams, validate_semiclassical
from .spectrum import MODELS, SEMICLASSICAL

FORMATS = ("csv", "json")

_TOP_REQUIRED = ("params", "grid", "models", "output_path")
_TOP_OPTIONAL = ("semiclassical", "format", "unit")
_PARAM_REQUIRED = ("n_atoms", "g", "omega_c", "kappa", "gamma_e")
_PARAM_OPTIONAL = ("gamma_s",)
_GRID_REQUIRED = ("min", "max", "points")
_SC_REQUIRED = ("length_medium", "length_cavity", "reflectivity", "omega_r", "chi_prefactor")
_SC_OPTIONAL = ("gamma_e", "gamma_s", "omega_c", "probe_frequency", "c_light")

CONSISTENT = "consistent"


class ConfigError(ValueError):
    def __init__(self, message: str, key: str | None = None, line: int | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key is not None:
            where.append(f"key '{key}'")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.key = key
        self.line = line


@dataclass(frozen=True)
class RunConfig:
    params: AtomCavityParams
    grid: DetuningGrid
    models: tuple
    semiclassical: SemiClassicalParams | None
    output_path: str
    format: str = "csv"
    unit: str = DEFAULT_UNIT
    # Kept so CLI overrides of the atom parameters can re-derive the prefactor.
    semiclassical_spec: dict | None = None

    def snapshot(self) -> dict:
        snap = {
            "params": self.params.snapshot(),
            "grid": {"min": self.grid.min, "max": self.grid.max, "points": self.grid.points},
            "models": list(self.models),
            "format": self.format,
            "unit": self.unit,
        }
        if self.semiclassical is not None:
            snap["semiclassical"] = self.semiclassical.snapshot()
        return snap


def _keys(obj, path, required, optional):
    if not isinstance(obj, dict):
        raise ConfigError(f"expected an object, got {type(obj).__name__}", key=path or None)
    prefix = f"{path}." if path else ""
    for k in obj:
        if k not in required and k not in optional:
            raise ConfigError("unknown key", key=prefix + k)
    for k in required:
        if k not in obj:
            raise ConfigError("missing required key", key=prefix + k)


def _number(value, key):
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise ConfigError(f"expected a number, got {json.dumps(value)}", key=key)
    return float(value)


def _integer(value, key):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        if isinstance(value, float) and value.is_integer():
            return int(value)
        raise ConfigError(f"expected an integer, got {json.dumps(value)}", key=key)
    return int(value)


def _key_line(text: str, key: str) -> int | None:
    needle = f'"{key.rsplit(".", 1)[-1]}"'
    for n, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return n
    return None


def build_params(raw: dict) -> AtomCavityParams:
    _keys(raw, "params", _PARAM_REQUIRED, _PARAM_OPTIONAL)
    p = AtomCavityParams(
        n_atoms=_integer(raw["n_atoms"], "params.n_atoms"),
        g=_number(raw["g"], "params.g"),
        omega_c=_number(raw["omega_c"], "params.omega_c"),
        kappa=_number(raw["kappa"], "params.kappa"),
        gamma_e=_number(raw["gamma_e"], "params.gamma_e"),
        gamma_s=_number(raw.get("gamma_s", 0.0), "params.gamma_s"),
    )
    try:
        return validate_params(p)
    except ParameterError as exc:
        key = "params" if exc.field == "basis" else f"params.{exc.field}"
        raise ConfigError(str(exc), key=key) from exc


def build_semiclassical(raw: dict, p: AtomCavityParams) -> SemiClassicalParams:
    _keys(raw, "semiclassical", _SC_REQUIRED, _SC_OPTIONAL)
    num = {k: _number(v, f"semiclassical.{k}") for k, v in raw.items() if k != "chi_prefactor"}
    omega_r = num["omega_r"]
    if raw["chi_prefactor"] == CONSISTENT:
        if num["length_medium"] <= 0 or omega_r <= 0:
            raise ConfigError("consistent prefactor needs length_medium > 0 and omega_r > 0",
                              key="semiclassical")
        base = SemiClassicalParams.consistent_with(
            p, num["length_medium"], num["length_cavity"], num["reflectivity"], omega_r
        )
        prefactor = base.chi_prefactor
    else:
        prefactor = _number(raw["chi_prefactor"], "semiclassical.chi_prefactor")
    sp = SemiClassicalParams(
        length_medium=num["length_medium"],
        length_cavity=num["length_cavity"],
        reflectivity=num["reflectivity"],
        omega_r=omega_r,
        chi_prefactor=prefactor,
        gamma_e=num.get("gamma_e", p.gamma_e),
        gamma_s=num.get("gamma_s", p.gamma_s),
        omega_c=num.get("omega_c", p.omega_c),
        probe_frequency=num.get("probe_frequency", omega_r),
        c_light=num.get("c_light", 1.0),
    )
    try:
        return validate_semiclassical(sp)
    except ParameterError as exc:
        raise ConfigError(str(exc), key=f"semiclassical.{exc.field}") from exc


def config_from_dict(doc: dict, text: str = "") -> RunConfig:
    try:
        _keys(doc, "", _TOP_REQUIRED, _TOP_OPTIONAL)
        p = build_params(doc["params"])

        _keys(doc["grid"], "grid", _GRID_REQUIRED, ())
        g = doc["grid"]
        lo, hi = _number(g["min"], "grid.min"), _number(g["max"], "grid.max")
        points = _integer(g["points"], "grid.points")
        try:
            grid = DetuningGrid(lo, hi, points)
        except ParameterError as exc:
            field = "points" if exc.field == "points" else "min"
            raise ConfigError(str(exc), key=f"grid.{field}") from exc

        models = doc["models"]
        if isinstance(models, str):
            models = [models]
        if not isinstance(models, list) or not models:
            raise ConfigError("select at least one model", key="models")
        for m in models:
            if m not in MODELS:
                raise ConfigError(f"unknown model {json.dumps(m)}, expected one of {list(MODELS)}",
                                  key="models")
        models = tuple(m for m in MODELS if m in models)

        has_sc = doc.get("semiclassical") is not None
        if (SEMICLASSICAL in models) != has_sc:
            raise ConfigError(
                "semiclassical parameters must be given exactly when the semiclassical model is selected",
                key="semiclassical",
            )
        sc = build_semiclassical(doc["semiclassical"], p) if has_sc else None

        out = doc["output_path"]
        if not isinstance(out, str) or not out:
            raise ConfigError("expected a non-empty path string", key="output_path")
        fmt = doc.get("format", "csv")
        if fmt not in FORMATS:
            raise ConfigError(f"expected one of {list(FORMATS)}, got {json.dumps(fmt)}", key="format")
        unit = doc.get("unit", DEFAULT_UNIT)
        if not isinstance(unit, str) or not unit:
            raise ConfigError("expected a non-empty string", key="unit")
    except ConfigError as exc:
        if text and exc.key and exc.line is None:
            raise ConfigError(str(exc).split(": ", 1)[-1], key=exc.key, line=_key_line(text, exc.key)) from exc
        raise
    return RunConfig(p, grid, models, sc, out, fmt, unit,
                     dict(doc["semiclassical"]) if has_sc else None)


def parse_config(text: str) -> RunConfig:
    """Parse and validate a JSON run configuration."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON: {exc.msg} (column {exc.colno})", line=exc.lineno) from exc
    return config_from_dict(doc, text)


def with_overrides(cfg: RunConfig, **overrides) -> RunConfig:
    """Apply CLI overrides (``omega_c``, ``n_atoms``, ``points``, ``min``, ``max``,
    ``models``, ``output_path``, ``format``); ``None`` values are ignored."""
    o = {k: v for k, v in overrides.items() if v is not None}
    if not o:
        return cfg
    doc = cfg.snapshot()
    doc["output_path"] = cfg.output_path
    if cfg.semiclassical_spec is not None:
        doc["semiclassical"] = cfg.semiclassical_spec
    for key in ("omega_c", "n_atoms"):
        if key in o:
            doc["params"][key] = o[key]
    for key in ("points", "min", "max"):
        if key in o:
            doc["grid"][key] = o[key]
    if "models" in o:
        doc["models"] = list(o["models"])
        if SEMICLASSICAL not in doc["models"]:
            doc.pop("semiclassical", None)
    for key in ("output_path", "format"):
        if key in o:
            doc[key] = o[key]
    return config_from_dict(doc)

