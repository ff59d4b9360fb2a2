"""Build script: compiles the optional Cython phase-kernel extension.

The package is fully functional without the extension (a numpy fallback is
selected at import time), so any failure here is demoted to a warning and
the build proceeds pure-Python.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    ext_modules = cythonize(
        [
            Extension(
                "trapmorph._kernels_cy",
                sources=["src/trapmorph/_kernels_cy.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - exercised only on broken toolchains
    sys.stderr.write(
        "trapmorph: skipping Cython extension (%s); using numpy kernels\n" % exc
    )

setup(ext_modules=ext_modules)
