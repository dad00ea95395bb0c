"""Semi-classical linewidth of a cavity filled with an EIT medium.

The medium enters through its linear susceptibility ``chi = chi' + i chi''``.
Absorption ``alpha = 2 pi omega_p chi'' / c`` sets the single-pass intensity
transmission ``tau = exp(-alpha l)``, and the dispersion slope sets the
pulling factor ``eta = omega_r (l / 2L) d chi'/d omega_p``.  The linewidth
relative to the empty cavity is then

    (1 - r tau) / (sqrt(tau) (1 - r)) * 1 / (1 + eta)

For chi we use the standard Lambda-system form

    chi(delta) = i C (gamma_s - i delta) / ((gamma_e - i delta)(gamma_s - i delta) + Omega^2)

which is a Lorentzian absorber for Omega = 0 and vanishes at two-photon
resonance when gamma_s = 0.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .params import AtomCavityParams, ParameterError, validate_params


@dataclass(frozen=True)
class SemiClassicalParams:
    length_medium: float
    length_cavity: float
    reflectivity: float
    omega_r: float
    chi_prefactor: float
    gamma_e: float
    gamma_s: float
    omega_c: float
    probe_frequency: float
    c_light: float = 1.0

    @classmethod
    def consistent_with(
        cls,
        p: AtomCavityParams,
        length_medium: float,
        length_cavity: float,
        reflectivity: float,
        omega_r: float,
        probe_frequency: float | None = None,
        c_light: float = 1.0,
    ) -> SemiClassicalParams:
        """Medium whose dispersion reproduces the quantum dark-polariton linewidth.

        Chooses ``C = 2 L N g^2 / (l omega_r)`` so that ``eta = N g^2 / Omega^2``
        at gamma_s = 0.  This is a derived matching condition, not a
        microscopic expression for the susceptibility.
        """
        validate_params(p)
        return cls(
            length_medium=length_medium,
            length_cavity=length_cavity,
            reflectivity=reflectivity,
            omega_r=omega_r,
            chi_prefactor=2.0 * length_cavity * p.n_atoms * p.g**2 / (length_medium * omega_r),
            gamma_e=p.gamma_e,
            gamma_s=p.gamma_s,
            omega_c=p.omega_c,
            probe_frequency=omega_r if probe_frequency is None else probe_frequency,
            c_light=c_light,
        )

    def snapshot(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class SemiClassicalIntermediates:
    chi: complex
    alpha: float
    tau: float
    eta: float
    dispersion_slope: float


def validate_semiclassical(sp: SemiClassicalParams) -> SemiClassicalParams:
    values = asdict(sp)
    for name, value in values.items():
        if not math.isfinite(value):
            raise ParameterError(name, f"must be finite, got {value!r}")
    if not 0 < sp.reflectivity < 1:
        raise ParameterError("reflectivity", f"need 0 < r < 1, got {sp.reflectivity}")
    if not sp.length_medium > 0:
        raise ParameterError("length_medium", f"must be > 0, got {sp.length_medium}")
    if sp.length_cavity < sp.length_medium:
        raise ParameterError(
            "length_cavity", f"cavity ({sp.length_cavity}) shorter than medium ({sp.length_medium})"
        )
    for name in ("chi_prefactor", "gamma_e", "gamma_s", "omega_c", "probe_frequency"):
        if values[name] < 0:
            raise ParameterError(name, f"must be >= 0, got {values[name]}")
    if not sp.omega_r > 0:
        raise ParameterError("omega_r", f"must be > 0, got {sp.omega_r}")
    if not sp.c_light > 0:
        raise ParameterError("c_light", f"must be > 0, got {sp.c_light}")
    return sp


def eit_susceptibility(delta: float, sp: SemiClassicalParams) -> complex:
    """Linear susceptibility at two-photon detuning ``delta``."""
    spin = complex(sp.gamma_s, -delta)
    optical = complex(sp.gamma_e, -delta)
    if spin == 0:
        # Two-photon resonance with no ground-state decay.
        if sp.omega_c > 0:
            return 0j
        if optical == 0:
            raise ParameterError(
                "susceptibility", "gamma_e = gamma_s = omega_c = delta = 0, chi undefined"
            )
        return 1j * sp.chi_prefactor / optical
    den = optical * spin + sp.omega_c**2
    if den == 0:
        raise ParameterError(
            "susceptibility", f"lossless medium driven exactly on a dressed resonance (delta={delta})"
        )
    return 1j * sp.chi_prefactor * spin / den


def absorption_coefficient(chi_imag: float, omega_p: float, c_light: float = 1.0) -> float:
    if chi_imag < 0:
        raise ParameterError("chi_imag", f"negative chi'' ({chi_imag}) describes gain, not supported")
    return 2.0 * math.pi * omega_p * chi_imag / c_light


def linewidth_ratio(tau: float, r: float, eta: float) -> float:
    """Cavity linewidth with the medium divided by the empty-cavity linewidth."""
    if r == 1:
        raise ParameterError("reflectivity", "r = 1 gives 0/0 in the linewidth ratio")
    if not 0 < r < 1:
        raise ParameterError("reflectivity", f"need 0 < r < 1, got {r}")
    if not 0 < tau <= 1:
        raise ParameterError("tau", f"need 0 < tau <= 1, got {tau}")
    if eta < 0:
        raise ParameterError("eta", f"need eta >= 0, got {eta}")
    return (1.0 - r * tau) / (math.sqrt(tau) * (1.0 - r)) / (1.0 + eta)


def default_step(sp: SemiClassicalParams) -> float:
    """Central-difference step for d chi'/d delta.

    A small fraction of the transparency window, which is ~Omega^2/gamma_e
    when Omega < gamma_e and ~Omega (Autler-Townes) otherwise.
    """
    if sp.omega_c > 0:
        return 1e-4 * sp.omega_c**2 / max(sp.gamma_e, sp.omega_c)
    return 1e-4 * max(sp.gamma_e, sp.gamma_s, sp.chi_prefactor, 1.0)


def dispersion_slope(sp: SemiClassicalParams, step: float | None = None) -> float:
    h = default_step(sp) if step is None else step
    return (eit_susceptibility(h, sp).real - eit_susceptibility(-h, sp).real) / (2.0 * h)


def semiclassical_linewidth(
    sp: SemiClassicalParams, step: float | None = None
) -> tuple[float, SemiClassicalIntermediates]:
    """Linewidth ratio at line center and the quantities that produced it."""
    validate_semiclassical(sp)
    chi = eit_susceptibility(0.0, sp)
    alpha = absorption_coefficient(chi.imag, sp.probe_frequency, sp.c_light)
    tau = math.exp(-alpha * sp.length_medium)
    slope = dispersion_slope(sp, step)
    eta = sp.omega_r * (sp.length_medium / (2.0 * sp.length_cavity)) * slope
    ratio = linewidth_ratio(tau, sp.reflectivity, eta)
    return ratio, SemiClassicalIntermediates(
        chi=chi, alpha=alpha, tau=tau, eta=eta, dispersion_slope=slope
    )


def semiclassical_transmission(deltas, kappa: float, sp: SemiClassicalParams) -> np.ndarray:
    """Lorentzian cavity line with the semi-classical width.

    Width is ``ratio * 2 kappa`` (FWHM); the peak is the Fabry-Perot value
    ``(1 - r)^2 tau / (1 - r tau)^2``, equal to 1 for a transparent medium.
    """
    ratio, mid = semiclassical_linewidth(sp)
    half = ratio * kappa
    r, tau = sp.reflectivity, mid.tau
    peak = (1.0 - r) ** 2 * tau / (1.0 - r * tau) ** 2
    d = np.asarray(deltas, dtype=float)
    return peak * half**2 / (half**2 + d**2)
