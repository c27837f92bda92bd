"""Build script for the optional compiled core.

The package works without the extension; ``fracsemi._backend`` falls back to
the NumPy implementations when ``fracsemi._core`` cannot be imported.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("FRACSEMI_NO_EXT", "") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        extensions = [
            Extension(
                "fracsemi._core",
                ["src/fracsemi/_core.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ]
        ext_modules = cythonize(
            extensions,
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
