"""Build script for the optional compiled search kernel.

The package is fully functional without the extension (a pure-Python
fallback is selected at import time); set HULLGAMES_SKIP_EXT=1 to skip
compilation entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("HULLGAMES_SKIP_EXT"):
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "hullgames._speedups",
                sources=["src/hullgames/_speedups.pyx"],
                language="c++",
                extra_compile_args=["-O2", "-std=c++11"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
