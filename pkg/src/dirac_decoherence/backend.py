"""Backend selection for the hot convolution kernel.

The real-space propagator step is a cyclic correlation of each chirality
component with a short (2j+1)-tap kernel, O(N*j) multiply-adds per step.  Two
interchangeable implementations exist:

* numba: @njit loops (default when numba imports cleanly)
* numpy: vectorized np.roll accumulation

Set DIRAC_DECOHERENCE_BACKEND=numpy (or numba) to force one; anything else is
rejected at import.  The active choice is exposed as BACKEND_NAME.
"""

from __future__ import annotations

import os

import numpy as np

_requested = os.environ.get("DIRAC_DECOHERENCE_BACKEND", "auto").lower()
if _requested not in ("auto", "numba", "numpy"):
    raise RuntimeError(
        f"DIRAC_DECOHERENCE_BACKEND must be 'numba', 'numpy' or 'auto', "
        f"got {_requested!r}"
    )


def cone_correlate_numpy(psi: np.ndarray, taps: np.ndarray, half_width: int) -> np.ndarray:
    """out[i] = sum_d taps[d + j] * psi[(i - d) mod N] for d in [-j, j]."""
    out = np.zeros_like(psi)
    for d in range(-half_width, half_width + 1):
        out += taps[d + half_width] * np.roll(psi, d)
    return out


if _requested in ("auto", "numba"):
    try:
        from numba import njit
    except ImportError:
        if _requested == "numba":
            raise
        njit = None
else:
    njit = None

if njit is not None:

    @njit(cache=True)
    def _cone_correlate_jit(psi, taps, half_width):  # pragma: no cover - compiled
        n = psi.shape[0]
        w = half_width
        # Pad with the periodic images so the inner loop stays contiguous.
        padded = np.empty(n + 2 * w, dtype=np.complex128)
        padded[:w] = psi[n - w :]
        padded[w : w + n] = psi
        padded[w + n :] = psi[:w]
        out = np.zeros(n, dtype=np.complex128)
        for i in range(n):
            acc = 0.0 + 0.0j
            base = i + 2 * w
            for j in range(2 * w + 1):
                acc += taps[j] * padded[base - j]
            out[i] = acc
        return out

    def cone_correlate(psi: np.ndarray, taps: np.ndarray, half_width: int) -> np.ndarray:
        return _cone_correlate_jit(
            np.ascontiguousarray(psi, dtype=np.complex128),
            np.ascontiguousarray(taps, dtype=np.complex128),
            half_width,
        )

    BACKEND_NAME = "numba"
else:
    cone_correlate = cone_correlate_numpy
    BACKEND_NAME = "numpy"
