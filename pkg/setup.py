"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (a pure-Python twin of every kernel
ships alongside it); set FUSS_DEFORM_PURE=1 to skip the compile step entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("FUSS_DEFORM_PURE"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "fussdeform._kernels_cy",
                    ["src/fussdeform/_kernels_cy.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
