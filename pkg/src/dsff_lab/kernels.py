"""Import-time selection of the phase-sum kernel.

The compiled Cython kernel is preferred; the numpy implementation is the
fallback. Both produce the same values to ~1e-15 relative (sequential vs
pairwise summation order), and whichever is active is fixed for the life of
the process, so output reproducibility holds per install.
"""
try:
    from ._phase_cy import linear_stat_sums

    BACKEND = "compiled"
except ImportError:  # extension not built: pure-python install
    from ._phase_np import linear_stat_sums

    BACKEND = "numpy"

__all__ = ["linear_stat_sums", "backend", "BACKEND"]


def backend():
    """Name of the active kernel implementation ("compiled" or "numpy")."""
    return BACKEND
