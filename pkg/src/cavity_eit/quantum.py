"""Quantum transmission of the intracavity EIT system.

Two routes to the same observable:

* the dark-polariton Lorentzian ``T = kappa_D^2 / (kappa_D^2 + delta^2)``,
  valid when the bright polariton is far off resonance, and
* the exact steady-state linear response of the three coupled amplitudes
  (cavity field, collective excited state, collective spin coherence), which
  keeps the bright polariton and so also shows the vacuum Rabi side peaks.

Both mirrors couple with amplitude ``sqrt(kappa)`` and the field decays at
``kappa`` in total, so the empty-cavity linewidth (FWHM) is ``2 kappa``.  The
probe enters through port beta with unit amplitude; transmission is read at
port alpha.  Noise operators are dropped: only mean amplitudes are computed.
"""

from __future__ import annotations

import numpy as np

from .params import AtomCavityParams, ParameterError, PortAmplitudes, validate_params
from .polariton import ModeAmplitudes, make_basis

# |det| below this marks the steady-state system as singular.
SINGULAR_DET = 1e-300


class ComputationError(RuntimeError):
    """A spectrum point could not be evaluated."""

    def __init__(self, message: str, delta=None, params=None, model=None):
        super().__init__(message)
        self.delta = delta
        self.params = params
        self.model = model


class SingularSystemError(ComputationError):
    pass


def _check_kappa_d(kappa_d):
    if not kappa_d > 0:
        raise ParameterError("kappa_d", f"dark-polariton decay must be > 0, got {kappa_d!r}")


def dark_output_amplitude(delta, kappa_d: float, beta_in: complex = 1.0):
    """Output amplitude at port alpha for a probe ``beta_in`` at detuning ``delta``."""
    _check_kappa_d(kappa_d)
    return kappa_d * beta_in / (kappa_d - 1j * np.asarray(delta))


def dark_transmission(delta, kappa_d: float):
    _check_kappa_d(kappa_d)
    delta = np.asarray(delta, dtype=float)
    return kappa_d**2 / (kappa_d**2 + delta**2)


def analytic_linewidth(p: AtomCavityParams) -> float:
    """FWHM of the dark-polariton line, ``2 kappa cos^2(theta)``."""
    return 2.0 * make_basis(p).kappa_d


def response_matrices(deltas, p: AtomCavityParams) -> np.ndarray:
    """Stack of 3x3 steady-state matrices acting on (a, c_e, c_s), one per detuning."""
    d = np.atleast_1d(np.asarray(deltas, dtype=float))
    sg = p.collective_g
    m = np.zeros((d.size, 3, 3), dtype=complex)
    m[:, 0, 0] = p.kappa - 1j * d
    m[:, 0, 1] = 1j * sg
    m[:, 1, 0] = 1j * sg
    m[:, 1, 1] = p.gamma_e - 1j * d
    m[:, 1, 2] = 1j * p.omega_c
    m[:, 2, 1] = 1j * p.omega_c
    m[:, 2, 2] = p.gamma_s - 1j * d
    return m


def solve_modes(deltas, p: AtomCavityParams, beta_in: complex = 1.0) -> np.ndarray:
    """Steady-state (a, c_e, c_s) for every detuning, shape ``(n, 3)``.

    Modes not connected to the cavity (c_e, c_s when N g = 0; c_s when
    Omega = 0) are undriven and left at zero, so a lossless decoupled atom
    cannot make the system singular.
    """
    validate_params(p)
    d = np.atleast_1d(np.asarray(deltas, dtype=float))
    active = [0]
    if p.collective_g > 0:
        active.append(1)
        if p.omega_c > 0:
            active.append(2)
    m = response_matrices(d, p)[np.ix_(range(d.size), active, active)]
    det = np.linalg.det(m)
    bad = np.flatnonzero(~(np.abs(det) >= SINGULAR_DET))
    if bad.size:
        delta = float(d[bad[0]])
        raise SingularSystemError(
            f"singular steady-state system at delta={delta!r} (|det|={abs(det[bad[0]]):.3g})",
            delta=delta,
            params=p,
        )
    rhs = np.zeros((d.size, len(active), 1), dtype=complex)
    rhs[:, 0, 0] = np.sqrt(p.kappa) * beta_in
    x = np.zeros((d.size, 3), dtype=complex)
    x[:, active] = np.linalg.solve(m, rhs)[:, :, 0]
    return x


def full_transmission(deltas, p: AtomCavityParams) -> np.ndarray:
    x = solve_modes(deltas, p)
    return np.abs(np.sqrt(p.kappa) * x[:, 0]) ** 2


def full_response(delta: float, p: AtomCavityParams) -> tuple[ModeAmplitudes, complex]:
    """Exact mode amplitudes and transmitted amplitude for unit drive at port beta."""
    a, c_e, c_s = solve_modes([delta], p)[0]
    alpha_in = 0.0
    alpha_out = np.sqrt(p.kappa) * a - alpha_in
    return ModeAmplitudes(a=complex(a), c_e=complex(c_e), c_s=complex(c_s)), complex(alpha_out)


def port_amplitudes(delta: float, p: AtomCavityParams) -> PortAmplitudes:
    """All four port amplitudes from the mirror relations ``out + in = sqrt(kappa) a``."""
    modes, alpha_out = full_response(delta, p)
    beta_in = 1.0
    return PortAmplitudes(
        alpha_in=0j,
        beta_in=complex(beta_in),
        alpha_out=alpha_out,
        beta_out=complex(np.sqrt(p.kappa) * modes.a - beta_in),
    )
