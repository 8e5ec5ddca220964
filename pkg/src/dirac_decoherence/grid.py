"""Periodic 1D grid, two-component spinor fields, and initial conditions.

The spatial domain is [-L, L) sampled at N uniform points.  A spinor field
stores the two chirality components as rows of a (2, N) complex array, with
row 0 holding chirality -1 and row 1 holding chirality +1.  This ordering is
fixed everywhere in the package.

Units are natural (hbar = c = 1): lengths, times and inverse masses share one
scale, and field values carry units of length^(-1/2) so that the probability
integral is dimensionless.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

# Row indices of the chirality components in SpinorField.values.
CHIRALITY_MINUS = 0
CHIRALITY_PLUS = 1

# Resolution guards for Gaussian packets.
MIN_SIGMA_OVER_DX = 3.0
MIN_L_OVER_SIGMA = 6.0


@dataclass(frozen=True)
class Grid1D:
    """Uniform periodic grid on [-L, L) with N points, x_i = -L + i*dx."""

    half_extent: float
    n_points: int

    def __post_init__(self):
        if self.half_extent <= 0:
            raise ValueError(f"half_extent must be positive, got {self.half_extent}")
        if self.n_points < 2 or self.n_points % 2 != 0:
            raise ValueError(
                f"n_points must be an even integer >= 2 (the transform pairs "
                f"+k/-k modes), got {self.n_points}"
            )

    @property
    def dx(self) -> float:
        return 2.0 * self.half_extent / self.n_points

    @property
    def x(self) -> np.ndarray:
        return -self.half_extent + self.dx * np.arange(self.n_points)

    @property
    def k(self) -> np.ndarray:
        """Discrete momenta k_j = pi*j/L in FFT order (Nyquist mode negative)."""
        return 2.0 * np.pi * np.fft.fftfreq(self.n_points, d=self.dx)


@dataclass(frozen=True)
class SpinorField:
    """Two-component spinor on a grid; values[0] is chirality -1, values[1] is +1."""

    grid: Grid1D
    values: np.ndarray = dc_field(repr=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.complex128)
        if vals.shape != (2, self.grid.n_points):
            raise ValueError(
                f"values must have shape (2, {self.grid.n_points}), got {vals.shape}"
            )
        vals = vals.copy()
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @property
    def minus(self) -> np.ndarray:
        return self.values[CHIRALITY_MINUS]

    @property
    def plus(self) -> np.ndarray:
        return self.values[CHIRALITY_PLUS]


@dataclass(frozen=True)
class InitialSpec:
    """Declarative description of an initial state.

    kind is one of "gaussian_packet", "plane_wave", "positive_energy_packet".
    For packets, (center, width, spinor) apply; for plane waves, (mode_index,
    energy_sign) apply.  mass is carried here because plane waves and
    energy-projected packets depend on it.
    """

    kind: str
    mass: float = 0.0
    center: float = 0.0
    width: float = 1.0
    spinor: tuple[complex, complex] = (1.0, 1.0)
    mode_index: int = 0
    energy_sign: int = 1

    def __post_init__(self):
        if self.kind not in ("gaussian_packet", "plane_wave", "positive_energy_packet"):
            raise ValueError(f"unknown initial condition kind {self.kind!r}")
        if self.kind != "plane_wave":
            if self.width <= 0:
                raise ValueError(f"width must be positive, got {self.width}")
            if self.spinor[0] == 0 and self.spinor[1] == 0:
                raise ValueError("spinor must be nonzero")
        if self.kind == "plane_wave" and self.energy_sign not in (-1, 1):
            raise ValueError(f"energy_sign must be +1 or -1, got {self.energy_sign}")
        if self.mass < 0:
            raise ValueError(f"mass must be nonnegative, got {self.mass}")


def norm(field: SpinorField) -> float:
    """Total probability: trapezoidal integral of psi^dagger psi over the grid.

    On a uniform periodic grid the trapezoidal rule reduces to dx times the
    plain sum over sites.
    """
    return float(np.sum(np.abs(field.values) ** 2) * field.grid.dx)


def make_gaussian_packet(
    grid: Grid1D, center: float, width: float, spinor: tuple[complex, complex]
) -> SpinorField:
    """Normalized Gaussian packet exp(-(x-center)^2/(2 width^2)) times a spinor.

    Rejects configurations the grid cannot resolve: the packet must span at
    least a few grid cells and decay well before the periodic boundary.
    """
    if width <= 0:
        raise ValueError(f"width must be positive, got {width}")
    if spinor[0] == 0 and spinor[1] == 0:
        raise ValueError("spinor must be nonzero")
    if width < MIN_SIGMA_OVER_DX * grid.dx:
        raise ValueError(
            f"width/dx = {width / grid.dx:.3g} but at least {MIN_SIGMA_OVER_DX} "
            f"grid cells per sigma are required to resolve the packet"
        )
    if grid.half_extent < MIN_L_OVER_SIGMA * width:
        raise ValueError(
            f"L/sigma = {grid.half_extent / width:.3g} but at least "
            f"{MIN_L_OVER_SIGMA} is required to keep periodic wraparound negligible"
        )
    envelope = np.exp(-((grid.x - center) ** 2) / (2.0 * width**2))
    s = np.asarray(spinor, dtype=np.complex128)
    values = s[:, None] * envelope[None, :]
    total = np.sum(np.abs(values) ** 2) * grid.dx
    values /= np.sqrt(total)
    return SpinorField(grid, values)


def make_plane_wave(grid: Grid1D, mode_index: int, energy_sign: int, mass: float) -> SpinorField:
    """Box-normalized stationary state e^(ikx) u(k, eps) / sqrt(2L)."""
    # Imported here to avoid a cycle: spectral builds SpinorFields too.
    from .spectral import eigenspinor

    n = grid.n_points
    if not (-n // 2 <= mode_index < n // 2):
        raise ValueError(
            f"mode_index {mode_index} outside the grid's momentum range "
            f"[{-n // 2}, {n // 2})"
        )
    k = np.pi * mode_index / grid.half_extent
    u = eigenspinor(k, energy_sign, mass)
    phase = np.exp(1j * k * grid.x) / np.sqrt(2.0 * grid.half_extent)
    return SpinorField(grid, u[:, None] * phase[None, :])


def build_initial(spec: InitialSpec, grid: Grid1D) -> SpinorField:
    """Construct the SpinorField described by an InitialSpec."""
    if spec.kind == "gaussian_packet":
        return make_gaussian_packet(grid, spec.center, spec.width, spec.spinor)
    if spec.kind == "plane_wave":
        return make_plane_wave(grid, spec.mode_index, spec.energy_sign, spec.mass)
    # positive_energy_packet: Gaussian with the negative-energy modes removed,
    # renormalized to unit probability.
    from .spectral import project_energy

    packet = make_gaussian_packet(grid, spec.center, spec.width, spec.spinor)
    projected = project_energy(packet, spec.mass, +1)
    total = norm(projected)
    if total <= 0:
        raise ValueError("packet has no positive-energy content")
    return SpinorField(grid, projected.values / np.sqrt(total))


def chirality_distributions(field: SpinorField) -> tuple[np.ndarray, np.ndarray]:
    """Position distributions (|psi_-1|^2, |psi_+1|^2) per grid site."""
    return np.abs(field.minus) ** 2, np.abs(field.plus) ** 2


def position_moments(field: SpinorField) -> tuple[float, float]:
    """Mean and centered variance of position under psi^dagger psi."""
    density = np.sum(np.abs(field.values) ** 2, axis=0)
    total = float(np.sum(density) * field.grid.dx)
    if total <= 0:
        raise ValueError("position moments are undefined for a zero-norm field")
    x = field.grid.x
    mean = float(np.sum(x * density) * field.grid.dx / total)
    variance = float(np.sum((x - mean) ** 2 * density) * field.grid.dx / total)
    return mean, variance
