"""Build the optional Cython kernel for GF(p)[X] arithmetic.

When Cython or a C compiler is unavailable the package still installs and
falls back to ``consys._ffpure`` at import time.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("CONSYS_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("consys._ffcore", ["src/consys/_ffcore.pyx"], extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
        )

setup(ext_modules=ext_modules)
