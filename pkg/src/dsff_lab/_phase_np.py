"""Pure-numpy phase-sum kernel (fallback when the compiled one is absent)."""
import numpy as np


def linear_stat_sums(re, im, t, s):
    """Per-sample sums of exp(i(t x + s y)) over eigenvalues.

    re, im: (m, n) float64 arrays of eigenvalue real/imaginary parts.
    Returns an (m,) complex128 array. numpy's pairwise reduction gives a
    deterministic result for fixed shapes regardless of worker counts.
    """
    return np.exp(1j * (t * re + s * im)).sum(axis=1)
