"""Exact-in-time evolution by plane-wave decomposition.

The chiral-basis Hamiltonian at momentum k is

    H(k) = [[-k, -m],
            [-m, +k]]

acting on (psi_-1, psi_+1): the diagonal gives the massless lightcone
translations (chirality alpha moves with velocity alpha) and the -m coupling
matches the small-time expansion of the off-diagonal propagator entry
i m J0 / 2.  Eigenvalues are eps*omega with omega = sqrt(k^2 + m^2), and
evolution multiplies each mode amplitude by exp(-i eps omega t).

Mode amplitudes are normalized so that sum_k,eps |amp|^2 equals the field's
probability integral (forward transform scaled by sqrt(dx/N)).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from .grid import Grid1D, SpinorField

# Sign of the mass coupling in H(k).  The cross-engine check against the
# Bessel-kernel propagator pins this choice; flipping it is a test hook.
MASS_COUPLING_SIGN = -1.0


def dispersion(k, m: float):
    """Positive energy branch omega = sqrt(k^2 + m^2)."""
    if m < 0:
        raise ValueError(f"mass must be nonnegative, got {m}")
    return np.sqrt(np.asarray(k, dtype=np.float64) ** 2 + m * m)


def eigenspinor(k: float, energy_sign: int, m: float, coupling_sign: float = MASS_COUPLING_SIGN) -> np.ndarray:
    """Normalized eigenspinor u(k, eps) of H(k) with a deterministic phase.

    Phase convention: first nonvanishing component real and nonnegative.
    """
    if energy_sign not in (-1, 1):
        raise ValueError(f"energy_sign must be +1 or -1, got {energy_sign}")
    basis = eigenbasis_arrays(k=np.array([float(k)]), m=m, coupling_sign=coupling_sign)
    u = basis.u_plus if energy_sign == 1 else basis.u_minus
    return u[:, 0].copy()


@dataclass(frozen=True)
class EnergyEigenbasis:
    """Per-momentum energies and orthonormal eigenspinors of H(k).

    u_plus/u_minus have shape (2, N): column j is the spinor at momentum k[j].
    """

    k: np.ndarray = dc_field(repr=False)
    m: float = 0.0
    omega: np.ndarray = dc_field(repr=False, default=None)
    u_plus: np.ndarray = dc_field(repr=False, default=None)
    u_minus: np.ndarray = dc_field(repr=False, default=None)


def eigenbasis_arrays(k: np.ndarray, m: float, coupling_sign: float = MASS_COUPLING_SIGN) -> EnergyEigenbasis:
    """Diagonalize H(k) = [[-k, s*m], [s*m, k]] for an array of momenta.

    Closed form: for eigenvalue eps*omega the two candidate eigenvectors are
    (s*m, k + eps*omega) and (k - eps*omega, -s*m); whichever has the larger
    norm is well conditioned, including the massless limit where one of them
    vanishes identically.
    """
    k = np.asarray(k, dtype=np.float64)
    omega = dispersion(k, m)
    sm = coupling_sign * m

    def vec(eps: int) -> np.ndarray:
        va = np.stack([np.full_like(k, sm), k + eps * omega])
        vb = np.stack([k - eps * omega, np.full_like(k, -sm)])
        na = np.sum(va**2, axis=0)
        nb = np.sum(vb**2, axis=0)
        v = np.where(na >= nb, va, vb)
        nrm = np.sqrt(np.sum(v**2, axis=0))
        # omega == 0 only at k == 0 with m == 0; fix the degenerate basis to the
        # k -> 0+ massless limit: u(+1) = (0, 1), u(-1) = (1, 0).
        degenerate = nrm == 0.0
        if np.any(degenerate):
            v = v.copy()
            nrm = nrm.copy()
            v[0 if eps == -1 else 1, degenerate] = 1.0
            nrm[degenerate] = 1.0
        v = v / nrm
        # Phase convention: first nonvanishing component nonnegative.
        lead = np.where(np.abs(v[0]) > 1e-300, v[0], v[1])
        v = v * np.where(lead < 0, -1.0, 1.0)
        return v.astype(np.complex128)

    return EnergyEigenbasis(k=k, m=float(m), omega=omega, u_plus=vec(+1), u_minus=vec(-1))


@lru_cache(maxsize=32)
def eigenbasis(grid: Grid1D, m: float, coupling_sign: float = MASS_COUPLING_SIGN) -> EnergyEigenbasis:
    """Eigenbasis over the grid's discrete momenta, cached per (grid, m)."""
    return eigenbasis_arrays(grid.k, m, coupling_sign)


@dataclass(frozen=True)
class ModeDecomposition:
    """Amplitudes over (k, eps) plus the basis used to produce them.

    amp_plus/amp_minus are indexed like grid.k (FFT order).  The squared
    amplitudes of both signs sum to the probability integral of the field.
    """

    grid: Grid1D
    m: float
    amp_plus: np.ndarray = dc_field(repr=False, default=None)
    amp_minus: np.ndarray = dc_field(repr=False, default=None)
    basis: EnergyEigenbasis = dc_field(repr=False, default=None)


def _mode_vectors(field: SpinorField) -> np.ndarray:
    """Fourier amplitudes psi_hat(k) as a (2, N) array in FFT order.

    The grid origin sits at index N/2, so each FFT bin picks up the factor
    e^{-i k_j x_0} = (-1)^j relative to numpy's index-based transform.
    """
    grid = field.grid
    signs = np.where(np.arange(grid.n_points) % 2 == 0, 1.0, -1.0)
    scale = np.sqrt(grid.dx / grid.n_points)
    return np.fft.fft(field.values, axis=1) * signs * scale


def _field_from_mode_vectors(grid: Grid1D, psi_hat: np.ndarray) -> SpinorField:
    signs = np.where(np.arange(grid.n_points) % 2 == 0, 1.0, -1.0)
    scale = np.sqrt(grid.dx / grid.n_points)
    values = np.fft.ifft(psi_hat * signs / scale, axis=1)
    return SpinorField(grid, values)


def decompose(field: SpinorField, m: float, coupling_sign: float = MASS_COUPLING_SIGN) -> ModeDecomposition:
    """Expand a field over the energy eigenmodes of H(k)."""
    basis = eigenbasis(field.grid, float(m), coupling_sign)
    psi_hat = _mode_vectors(field)
    amp_plus = np.sum(np.conj(basis.u_plus) * psi_hat, axis=0)
    amp_minus = np.sum(np.conj(basis.u_minus) * psi_hat, axis=0)
    return ModeDecomposition(
        grid=field.grid, m=float(m), amp_plus=amp_plus, amp_minus=amp_minus, basis=basis
    )


def reconstruct(modes: ModeDecomposition) -> SpinorField:
    """Inverse of decompose."""
    psi_hat = (
        modes.amp_plus[None, :] * modes.basis.u_plus
        + modes.amp_minus[None, :] * modes.basis.u_minus
    )
    return _field_from_mode_vectors(modes.grid, psi_hat)


def evolve_modes(modes: ModeDecomposition, t: float) -> ModeDecomposition:
    """Advance mode amplitudes by phases exp(-i eps omega t)."""
    phase = np.exp(-1j * modes.basis.omega * t)
    return ModeDecomposition(
        grid=modes.grid,
        m=modes.m,
        amp_plus=modes.amp_plus * phase,
        amp_minus=modes.amp_minus * np.conj(phase),
        basis=modes.basis,
    )


def evolve(field: SpinorField, m: float, t: float, coupling_sign: float = MASS_COUPLING_SIGN) -> SpinorField:
    """Evolve a field exactly to time t (negative t runs backward)."""
    return reconstruct(evolve_modes(decompose(field, m, coupling_sign), t))


def project_energy(field: SpinorField, m: float, energy_sign: int) -> SpinorField:
    """Keep only the modes of one energy sign; idempotent, sums to identity."""
    if energy_sign not in (-1, 1):
        raise ValueError(f"energy_sign must be +1 or -1, got {energy_sign}")
    modes = decompose(field, m)
    zero = np.zeros_like(modes.amp_plus)
    kept = ModeDecomposition(
        grid=modes.grid,
        m=modes.m,
        amp_plus=modes.amp_plus if energy_sign == 1 else zero,
        amp_minus=modes.amp_minus if energy_sign == -1 else zero,
        basis=modes.basis,
    )
    return reconstruct(kept)
