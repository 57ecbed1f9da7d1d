"""Build shim for the optional compiled phase-sum kernel.

The package is pure Python with a numpy fallback; if Cython and a C
compiler are available the hot estimator kernel is compiled, otherwise
the install proceeds without it.
"""
from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("dsff_lab._phase_cy", ["src/dsff_lab/_phase_cy.pyx"])],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
