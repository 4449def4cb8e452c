"""Ocean wave spectrum, effective-wave transfer, and time-series synthesis.

The chain implemented here: the two-parameter ITTC spectrum S_w(omega) is
mapped through the effective-wave (Grim) transfer function into the
spectrum of the effective wave amplitude seen by the hull, which is then
split into equal-energy components with random phases for non-repeating
time-series synthesis.

Everything is a pure function over immutable inputs; the only seeded step
is phase generation in :func:`discretize_equal_energy`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .config import G, SeaState, WaveNumerics


@dataclass(frozen=True)
class SpectrumGrid:
    """Spectral density sampled on an increasing frequency grid."""

    omega: np.ndarray    # rad/s, strictly increasing, > 0
    density: np.ndarray  # m^2 s, >= 0

    def __post_init__(self):
        omega = np.asarray(self.omega, dtype=float)
        density = np.asarray(self.density, dtype=float)
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "density", density)
        if omega.ndim != 1 or omega.shape != density.shape:
            raise ValueError("omega and density must be 1-d arrays of equal length")
        if omega.size and not (omega > 0).all():
            raise ValueError("omega grid must be positive")
        if omega.size > 1 and not (np.diff(omega) > 0).all():
            raise ValueError("omega grid must be strictly increasing")
        if not np.isfinite(density).all() or (density < 0).any():
            raise ValueError("density must be finite and >= 0")


@dataclass(frozen=True)
class WaveComponents:
    """Equal-energy wave components for time-series synthesis.

    By construction sum(amplitude^2)/2 equals the spectral variance the
    components were built from, and phases lie in [0, 2*pi).
    """

    omega: np.ndarray      # rad/s
    amplitude: np.ndarray  # m
    phase: np.ndarray      # rad
    seed: int | None = None

    def __post_init__(self):
        for name in ("omega", "amplitude", "phase"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        if not (self.omega.shape == self.amplitude.shape == self.phase.shape):
            raise ValueError("component arrays must have equal shape")

    @property
    def count(self) -> int:
        return self.omega.size

    def with_phases(self, phase: np.ndarray) -> "WaveComponents":
        return WaveComponents(self.omega, self.amplitude, phase, seed=self.seed)


def ittc_spectrum(omega, sea: SeaState):
    """Two-parameter ITTC wave spectrum, m^2 s.

    S_w(omega) = 173 H13^2 / (T01^4 omega^5) * exp(-691 / (T01^4 omega^4)),
    extended continuously by 0 at omega = 0.  Raises on negative omega.
    """
    omega = np.asarray(omega, dtype=float)
    if (omega < 0).any():
        raise ValueError("omega must be >= 0")
    t4 = sea.t01 ** 4
    out = np.zeros_like(omega)
    pos = omega > 0
    w = omega[pos]
    out[pos] = 173.0 * sea.h13 ** 2 / (t4 * w ** 5) * np.exp(-691.0 / (t4 * w ** 4))
    return float(out) if out.ndim == 0 else out


def ittc_peak_omega(sea: SeaState) -> float:
    """Frequency of the ITTC spectral peak: (4*691 / (5*T01^4))^(1/4)."""
    return (4.0 * 691.0 / (5.0 * sea.t01 ** 4)) ** 0.25


def ittc_variance(sea: SeaState) -> float:
    """Closed-form zeroth moment of the ITTC spectrum: 173 H13^2 / 2764."""
    return 173.0 * sea.h13 ** 2 / (4.0 * 691.0)


def effective_wave_transfer(omega, chi: float, wave_length: float):
    """Effective-wave (Grim) transfer amplitude, dimensionless.

    With x = (omega^2 L / 2g) cos(chi) the cosine part is
    2 x sin(x) / (pi^2 - x^2); the quadrature part is identically zero, so
    the returned real value is the whole transfer function.  The removable
    singularity at x = +-pi (value 1) is handled by the equivalent stable
    form 2|x| * sinc(|x| - pi) / (pi + |x|), exact for all x, so no special
    casing near the singularity is needed.
    """
    omega = np.asarray(omega, dtype=float)
    x = omega ** 2 * wave_length / (2.0 * G) * np.cos(chi)
    y = np.abs(x)  # the transfer is even in x
    u = y - np.pi
    # np.sinc(z) = sin(pi z)/(pi z), so sin(u)/u = sinc(u/pi)
    out = 2.0 * y * np.sinc(u / np.pi) / (np.pi + y)
    return float(out) if out.ndim == 0 else out


def effective_spectrum(grid: SpectrumGrid, sea: SeaState) -> SpectrumGrid:
    """Pointwise |H|^2 * S_w on the same omega grid."""
    h = effective_wave_transfer(grid.omega, sea.heading, sea.wave_length)
    return SpectrumGrid(grid.omega, h * h * grid.density)


def wave_spectrum_grid(sea: SeaState, waves: WaveNumerics = WaveNumerics()) -> SpectrumGrid:
    """ITTC spectrum sampled on the configured uniform omega grid."""
    omega = np.linspace(waves.omega_min, waves.omega_max, waves.grid_points)
    return SpectrumGrid(omega, ittc_spectrum(omega, sea))


def spectral_variance(grid: SpectrumGrid) -> float:
    """Zeroth spectral moment by the trapezoidal rule, m^2."""
    if grid.omega.size < 2:
        raise ValueError("need at least 2 grid points to integrate")
    return float(np.trapezoid(grid.density, grid.omega))


def discretize_equal_energy(grid: SpectrumGrid, n: int, rng_seed: int) -> WaveComponents:
    """Split a spectrum into n components of equal energy m0/n.

    Each component carries amplitude sqrt(2 m0 / n); its frequency is the
    energy centroid of its band (not the midpoint), which preserves the
    spectral mean of the synthesized series.  Phases are independent
    uniform [0, 2*pi) draws from the seeded generator.
    """
    if n < 1:
        raise ValueError("component count n must be >= 1")
    m0 = spectral_variance(grid)
    if not m0 > 0:
        raise ValueError("degenerate spectrum: zero variance")

    energy = cumulative_trapezoid(grid.density, grid.omega, initial=0.0)
    first_moment = cumulative_trapezoid(grid.omega * grid.density, grid.omega,
                                        initial=0.0)
    band_energy = m0 / n
    levels = np.linspace(0.0, energy[-1], n + 1)
    edges = np.interp(levels, energy, grid.omega)
    m1_at_edges = np.interp(edges, grid.omega, first_moment)
    omega_i = np.diff(m1_at_edges) / band_energy

    amplitude = np.full(n, np.sqrt(2.0 * band_energy))
    rng = np.random.default_rng(rng_seed)
    phase = rng.uniform(0.0, 2.0 * np.pi, n)
    return WaveComponents(omega_i, amplitude, phase, seed=rng_seed)


def synthesize_effective_wave(components: WaveComponents, t):
    """Effective wave elevation A_w(t) = sum a_i cos(omega_i t + phase_i), m.

    ``t`` may be a scalar or an array; the sum is accumulated component by
    component, so large time arrays stay memory-light.
    """
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    for a, w, p in zip(components.amplitude, components.omega, components.phase):
        out += a * np.cos(w * t + p)
    return float(out) if out.ndim == 0 else out


def synthesize_block(components: WaveComponents, t: np.ndarray) -> np.ndarray:
    """Fast synthesis of A_w on a time grid via the angle-addition split.

    cos(w t + p) = cos(p) cos(w t) - sin(p) sin(w t) turns the component
    sum into two matrix products against shared cos/sin tables, which is
    what the simulator's inner loop needs.  Mathematically identical to
    :func:`synthesize_effective_wave`.
    """
    wt = components.omega[:, None] * t[None, :]
    c = (components.amplitude * np.cos(components.phase)) @ np.cos(wt)
    s = (components.amplitude * np.sin(components.phase)) @ np.sin(wt)
    return c - s
