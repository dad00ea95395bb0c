"""Dark/bright cavity polaritons.

With all atoms in the ground state the cavity field ``a`` and the collective
spin coherence ``C_s`` mix into

    m_D = cos(theta) a - sin(theta) C_s      (decoupled from C_e)
    m_B = sin(theta) a + cos(theta) C_s      (couples to C_e at sqrt(N g^2 + Omega^2))

with ``cos(theta) = Omega / sqrt(N g^2 + Omega^2)``.  Only the photonic part
leaks through the mirrors, so the dark polariton decays at
``kappa_D = cos^2(theta) kappa`` and the bright one at ``sin^2(theta) kappa``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .params import AtomCavityParams, validate_params

# "much greater than" in the coupling-regime diagnostics means this factor.
STRONG_COUPLING_FACTOR = 10.0

COLLECTIVE_STRONG = "collective-strong"
WEAK = "weak"
MARGINAL = "marginal"


@dataclass(frozen=True)
class PolaritonBasis:
    cos_theta: float
    sin_theta: float
    kappa_d: float
    kappa_b: float
    collective_rabi: float

    @property
    def cos2_theta(self) -> float:
        return self.cos_theta**2


@dataclass(frozen=True)
class ModeAmplitudes:
    a: complex
    c_e: complex
    c_s: complex


@dataclass(frozen=True)
class PolaritonAmplitudes:
    m_d: complex
    m_b: complex


@dataclass(frozen=True)
class RegimeReport:
    margin: float
    label: str
    threshold: float = STRONG_COUPLING_FACTOR


def make_basis(p: AtomCavityParams) -> PolaritonBasis:
    validate_params(p)
    ng2 = p.n_atoms * p.g**2
    om2 = p.omega_c**2
    r2 = ng2 + om2
    rabi = math.sqrt(r2)
    cos2 = om2 / r2
    sin2 = ng2 / r2
    return PolaritonBasis(
        cos_theta=p.omega_c / rabi,
        sin_theta=math.sqrt(p.n_atoms) * p.g / rabi,
        kappa_d=p.kappa * cos2,
        kappa_b=p.kappa * sin2,
        collective_rabi=rabi,
    )


def basis_from_angle(cos_theta: float, sin_theta: float, kappa: float = 1.0) -> PolaritonBasis:
    """Basis for a given mixing angle, for working with amplitudes directly.

    ``collective_rabi`` is not fixed by the angle alone and is set to NaN.
    """
    if not math.isclose(cos_theta**2 + sin_theta**2, 1.0, rel_tol=0, abs_tol=1e-12):
        raise ValueError(f"cos^2 + sin^2 != 1 for ({cos_theta}, {sin_theta})")
    if cos_theta < 0 or sin_theta < 0:
        raise ValueError("mixing angle components must lie in [0, 1]")
    return PolaritonBasis(
        cos_theta=cos_theta,
        sin_theta=sin_theta,
        kappa_d=kappa * cos_theta**2,
        kappa_b=kappa * sin_theta**2,
        collective_rabi=math.nan,
    )


def to_polariton(m: ModeAmplitudes, b: PolaritonBasis) -> PolaritonAmplitudes:
    c, s = b.cos_theta, b.sin_theta
    return PolaritonAmplitudes(m_d=c * m.a - s * m.c_s, m_b=s * m.a + c * m.c_s)


def from_polariton(m: PolaritonAmplitudes, b: PolaritonBasis) -> ModeAmplitudes:
    # C_e sits outside the (a, C_s) rotation, so it cannot be recovered here.
    c, s = b.cos_theta, b.sin_theta
    return ModeAmplitudes(a=c * m.m_d + s * m.m_b, c_e=0j, c_s=-s * m.m_d + c * m.m_b)


def coupling_regime(p: AtomCavityParams) -> RegimeReport:
    """Margin of the strong-coupling condition and a regime label.

    ``margin = sqrt(N g^2 + Omega^2) / max(kappa_B, gamma_e)``; the label only
    looks at the collective coupling sqrt(N) g against max(kappa, gamma_e).
    """
    b = make_basis(p)
    loss = max(b.kappa_b, p.gamma_e)
    margin = math.inf if loss == 0 else b.collective_rabi / loss

    sg = p.collective_g
    scale = max(p.kappa, p.gamma_e)
    if sg >= STRONG_COUPLING_FACTOR * scale:
        label = COLLECTIVE_STRONG
    elif sg <= scale:
        label = WEAK
    else:
        label = MARGINAL
    return RegimeReport(margin=margin, label=label)
