"""Peak positions, half-maximum widths and Lorentzian fits of a spectrum.

The FWHM is measured by linear interpolation of the half-maximum crossings,
so it makes no assumption about the line shape.  The Lorentzian fit is a
separate check: its residual says how Lorentzian the line actually is.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .spectrum import Spectrum

FIT_TOL = 1e-10
FIT_MAX_ITER = 200


class LineshapeError(ValueError):
    pass


class BracketError(LineshapeError):
    """Half maximum not crossed inside the grid; ``min_transmission`` is the lowest T reached."""

    def __init__(self, message: str, min_transmission: float):
        super().__init__(message)
        self.min_transmission = min_transmission


class FitError(LineshapeError):
    def __init__(self, message: str, trace: list):
        super().__init__(message)
        self.trace = trace


@dataclass(frozen=True)
class LineshapeReport:
    peak_positions: list
    peak_heights: list
    fwhm: float
    fit_center: float
    fit_width: float
    fit_amplitude: float
    fit_residual: float

    def __post_init__(self):
        if len(self.peak_positions) != len(self.peak_heights):
            raise ValueError("peak position and height lists differ in length")
        if any(b <= a for a, b in zip(self.peak_positions, self.peak_positions[1:])):
            raise ValueError("peak positions must be strictly increasing")
        if not self.fwhm > 0:
            raise ValueError(f"fwhm must be > 0, got {self.fwhm}")
        if not self.fit_residual >= 0:
            raise ValueError(f"fit residual must be >= 0, got {self.fit_residual}")

    def to_dict(self) -> dict:
        return asdict(self)


def _plateaus(t: np.ndarray):
    """Yield (start, stop) index ranges of strict local maxima, plateaus included."""
    i, n = 1, t.size
    while i < n - 1:
        if t[i] > t[i - 1]:
            j = i
            while j + 1 < n and t[j + 1] == t[i]:
                j += 1
            if j + 1 < n and t[j + 1] < t[i]:
                yield i, j
            i = j + 1
        else:
            i += 1


def find_peaks(s: Spectrum) -> list[tuple[float, float]]:
    """Strict local maxima as (delta, T); a flat top is reported once at its midpoint."""
    if len(s) < 3:
        raise LineshapeError(f"need at least 3 points to find peaks, got {len(s)}")
    d, t = s.detunings, s.transmission
    return [(float(0.5 * (d[a] + d[b])), float(t[a])) for a, b in _plateaus(t)]


def _central(s: Spectrum):
    ranges = list(_plateaus(s.transmission))
    if not ranges:
        raise LineshapeError("spectrum has no local maximum")
    d = s.detunings
    return min(ranges, key=lambda ab: abs(0.5 * (d[ab[0]] + d[ab[1]])))


def fwhm_of_central_peak(s: Spectrum) -> float:
    """Full width at half maximum of the peak closest to delta = 0."""
    if len(s) < 3:
        raise LineshapeError(f"need at least 3 points, got {len(s)}")
    d, t = s.detunings, s.transmission
    a, b = _central(s)
    if not t[a] > 0:
        raise LineshapeError("central peak height must be positive")
    half = 0.5 * t[a]

    left = a
    while left > 0 and t[left] > half:
        left -= 1
    right = b
    while right < t.size - 1 and t[right] > half:
        right += 1
    if t[left] > half or t[right] > half:
        raise BracketError(
            f"half maximum {half:.6g} not bracketed on the grid "
            f"[{d[0]:.6g}, {d[-1]:.6g}] (lowest T reached {t.min():.6g}); widen the grid",
            min_transmission=float(t.min()),
        )
    x_left = d[left] + (half - t[left]) * (d[left + 1] - d[left]) / (t[left + 1] - t[left])
    x_right = d[right] + (half - t[right]) * (d[right - 1] - d[right]) / (t[right - 1] - t[right])
    return float(x_right - x_left)


def lorentzian(delta, center: float, width: float, amplitude: float):
    """``amplitude * width^2 / (width^2 + (delta - center)^2)``; ``width`` is the HWHM."""
    u = np.asarray(delta) - center
    return amplitude * width**2 / (width**2 + u**2)


def _jacobian(x, center, width, amplitude):
    u = x - center
    den = width**2 + u**2
    shape = width**2 / den
    return np.column_stack(
        [
            amplitude * width**2 * 2.0 * u / den**2,
            amplitude * 2.0 * width * u**2 / den**2,
            shape,
        ]
    )


def lorentzian_fit(s: Spectrum, window: float | None = None) -> tuple[float, float, float, float]:
    """Least-squares Lorentzian fit of the central peak.

    Returns (center, width, amplitude, rms residual).  ``window`` restricts the
    fit to points within that distance of the initial center.
    """
    if len(s) < 5:
        raise LineshapeError(f"need at least 5 points to fit, got {len(s)}")
    d, t = s.detunings, s.transmission
    a, b = _central(s)
    center = 0.5 * (d[a] + d[b])
    amplitude = float(t[a])
    if not amplitude > 0:
        raise LineshapeError("central peak height must be positive")
    try:
        width = 0.5 * fwhm_of_central_peak(s)
    except BracketError:
        width = 0.25 * (d[-1] - d[0])

    if window is not None:
        keep = np.abs(d - center) <= window
        d, t = d[keep], t[keep]
        if d.size < 5:
            raise LineshapeError(f"only {d.size} points inside the fit window")

    p = np.array([center, width, amplitude], dtype=float)
    r = t - lorentzian(d, *p)
    cost = float(r @ r)
    lam = 1e-3
    trace = []
    for it in range(FIT_MAX_ITER):
        jac = _jacobian(d, *p)
        jtj = jac.T @ jac
        grad = jac.T @ r
        damped = jtj + lam * np.diag(np.diag(jtj))
        try:
            step = np.linalg.solve(damped, grad)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(damped, grad, rcond=None)[0]
        trial = p + step
        r_trial = t - lorentzian(d, *trial)
        cost_trial = float(r_trial @ r_trial)
        trace.append((it, cost, lam))
        scale = np.array([abs(p[1]), abs(p[1]), abs(p[2])])
        if cost_trial <= cost:
            p, r, cost = trial, r_trial, cost_trial
            lam = max(lam / 10.0, 1e-12)
        else:
            lam *= 10.0
        if np.all(np.abs(step) <= FIT_TOL * scale):
            break
    else:
        summary = f"first cost {trace[0][1]:.3g}, last cost {trace[-1][1]:.3g}, damping {lam:.3g}"
        raise FitError(f"Lorentzian fit did not converge in {FIT_MAX_ITER} iterations ({summary})", trace)

    rms = float(np.sqrt(cost / d.size))
    return float(p[0]), float(abs(p[1])), float(p[2]), rms


def analyze(s: Spectrum, fit_window: float | None = None) -> LineshapeReport:
    """Peaks, central FWHM and a Lorentzian fit of the central peak.

    By default the fit uses points within one FWHM of the central peak, where
    a dark-polariton line is closest to Lorentzian.
    """
    peaks = find_peaks(s)
    fwhm = fwhm_of_central_peak(s)
    window = fwhm if fit_window is None else fit_window
    a, b = _central(s)
    mid = 0.5 * (s.detunings[a] + s.detunings[b])
    if np.count_nonzero(np.abs(s.detunings - mid) <= window) < 5:
        # Coarse grid: fit everything rather than fail.
        window = None
    center, width, amplitude, residual = lorentzian_fit(s, window=window)
    return LineshapeReport(
        peak_positions=[float(x) for x, _ in peaks],
        peak_heights=[float(y) for _, y in peaks],
        fwhm=fwhm,
        fit_center=center,
        fit_width=width,
        fit_amplitude=amplitude,
        fit_residual=residual,
    )
