"""Transmission spectra over a detuning grid."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .params import AtomCavityParams, DetuningGrid, validate_params
from .polariton import make_basis
from .quantum import ComputationError, dark_transmission, full_transmission
from .semiclassical import SemiClassicalParams, semiclassical_transmission

ANALYTIC_DARK = "analytic-dark"
FULL_LINEAR = "full-linear"
SEMICLASSICAL = "semiclassical"
MODELS = (ANALYTIC_DARK, FULL_LINEAR, SEMICLASSICAL)
QUANTUM_MODELS = (ANALYTIC_DARK, FULL_LINEAR)


@dataclass(frozen=True, eq=False)
class Spectrum:
    detunings: np.ndarray
    transmission: np.ndarray
    model: str
    params_snapshot: dict = field(default_factory=dict)

    def __post_init__(self):
        d = np.asarray(self.detunings, dtype=float)
        t = np.asarray(self.transmission, dtype=float)
        object.__setattr__(self, "detunings", d)
        object.__setattr__(self, "transmission", t)
        if d.ndim != 1 or d.shape != t.shape:
            raise ValueError(f"detunings {d.shape} and transmission {t.shape} must be equal-length 1-D")
        if d.size > 1 and not np.all(np.diff(d) > 0):
            raise ValueError("detunings must be strictly increasing")
        if self.model not in MODELS:
            raise ValueError(f"unknown model tag {self.model!r}")

    def __len__(self):
        return self.detunings.size

    def __eq__(self, other):
        if not isinstance(other, Spectrum):
            return NotImplemented
        return (
            self.model == other.model
            and self.params_snapshot == other.params_snapshot
            and np.array_equal(self.detunings, other.detunings)
            and np.array_equal(self.transmission, other.transmission)
        )

    __hash__ = None

    def window(self, lo: float, hi: float) -> Spectrum:
        """Sub-spectrum with lo <= delta <= hi."""
        keep = (self.detunings >= lo) & (self.detunings <= hi)
        return Spectrum(self.detunings[keep], self.transmission[keep], self.model, self.params_snapshot)


def _evaluate(model, d, p, sc):
    if model == ANALYTIC_DARK:
        return dark_transmission(d, make_basis(p).kappa_d)
    if model == FULL_LINEAR:
        return full_transmission(d, p)
    return semiclassical_transmission(d, p.kappa, sc)


def sweep(
    p: AtomCavityParams,
    grid: DetuningGrid,
    model: str,
    semiclassical: SemiClassicalParams | None = None,
    workers: int = 1,
    chunks: int | None = None,
) -> Spectrum:
    """Evaluate one model over the grid.

    Points are independent, so the grid may be split into ``chunks`` and
    evaluated on ``workers`` threads; the result is identical either way.
    """
    validate_params(p)
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}, expected one of {MODELS}")
    if model == SEMICLASSICAL and semiclassical is None:
        raise ValueError("semiclassical model needs SemiClassicalParams")

    d = grid.values()
    parts = np.array_split(d, chunks or workers)

    def run(part):
        try:
            return _evaluate(model, part, p, semiclassical)
        except ComputationError as exc:
            exc.model = model
            raise
        except (ValueError, ArithmeticError) as exc:
            raise ComputationError(
                f"{model}: {exc} (delta in [{part[0]!r}, {part[-1]!r}])",
                delta=float(part[0]),
                params=p,
                model=model,
            ) from exc

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, parts))
    else:
        results = [run(part) for part in parts]

    snapshot = {"params": p.snapshot(), "grid": {"min": grid.min, "max": grid.max, "points": grid.points}}
    if model == SEMICLASSICAL:
        snapshot["semiclassical"] = semiclassical.snapshot()
    return Spectrum(d, np.concatenate(results), model, snapshot)
