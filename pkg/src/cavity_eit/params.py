"""Parameter types shared by every model.

All rates (couplings, decay rates, detunings) live in one declared unit.
The default unit is the bare cavity decay rate, so ``kappa=1`` and every
other rate is a multiple of it.  Only ratios enter the physics, which is why
rescaling every rate and detuning by the same factor leaves transmission and
linewidth ratios unchanged.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import asdict, dataclass

import numpy as np

DEFAULT_UNIT = "kappa"


class ParameterError(ValueError):
    """An invariant of a parameter object is violated.

    ``field`` names the offending field (or ``"basis"`` when the polariton
    basis cannot be built).
    """

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass(frozen=True)
class AtomCavityParams:
    n_atoms: int
    g: float
    omega_c: float
    kappa: float
    gamma_e: float
    gamma_s: float = 0.0

    @property
    def collective_g(self) -> float:
        """sqrt(N) * g."""
        return math.sqrt(self.n_atoms) * self.g

    def scaled(self, factor: float) -> AtomCavityParams:
        """Same system with every rate multiplied by ``factor``."""
        return AtomCavityParams(
            n_atoms=self.n_atoms,
            g=self.g * factor,
            omega_c=self.omega_c * factor,
            kappa=self.kappa * factor,
            gamma_e=self.gamma_e * factor,
            gamma_s=self.gamma_s * factor,
        )

    def snapshot(self) -> dict:
        return asdict(self)


def validate_params(p: AtomCavityParams) -> AtomCavityParams:
    """Return ``p`` unchanged if every invariant holds, else raise ParameterError."""
    if isinstance(p.n_atoms, bool) or not isinstance(p.n_atoms, (int, np.integer)):
        raise ParameterError("n_atoms", f"must be an integer count, got {p.n_atoms!r}")
    if p.n_atoms < 0:
        raise ParameterError("n_atoms", f"must be >= 0, got {p.n_atoms}")
    for name in ("g", "omega_c", "kappa", "gamma_e", "gamma_s"):
        value = getattr(p, name)
        if not math.isfinite(value):
            raise ParameterError(name, f"must be finite, got {value!r}")
        if value < 0:
            raise ParameterError(name, f"negative rate {value!r}")
    if p.kappa == 0:
        raise ParameterError("kappa", "cavity decay rate must be > 0")
    if p.n_atoms * p.g**2 + p.omega_c**2 == 0:
        raise ParameterError(
            "basis", "N*g^2 + omega_c^2 = 0, polariton mixing angle is undefined"
        )
    return p


@dataclass(frozen=True)
class DetuningGrid:
    min: float
    max: float
    points: int

    def __post_init__(self):
        if isinstance(self.points, bool) or not isinstance(self.points, (int, np.integer)):
            raise ParameterError("points", f"must be an integer, got {self.points!r}")
        if self.points < 2:
            raise ParameterError("points", f"need at least 2 grid points, got {self.points}")
        if not (math.isfinite(self.min) and math.isfinite(self.max)):
            raise ParameterError("min/max", "grid bounds must be finite")
        if not self.min < self.max:
            raise ParameterError("min/max", f"need min < max, got [{self.min}, {self.max}]")

    def values(self) -> np.ndarray:
        return np.linspace(self.min, self.max, self.points)

    def scaled(self, factor: float) -> DetuningGrid:
        return DetuningGrid(self.min * factor, self.max * factor, self.points)


@dataclass(frozen=True)
class PortAmplitudes:
    """Field amplitudes at the two mirrors, normalized to the input drive."""

    alpha_in: complex
    beta_in: complex
    alpha_out: complex
    beta_out: complex

    def __post_init__(self):
        for name in ("alpha_in", "beta_in", "alpha_out", "beta_out"):
            if not cmath.isfinite(complex(getattr(self, name))):
                raise ParameterError(name, "port amplitude must be finite")
