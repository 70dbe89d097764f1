"""Build script: compiles the optional word-reduction kernel when Cython is around.

The package is fully functional without the extension (a pure-Python twin is
selected at import time), so build failures here are non-fatal.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("ORBIGROUPOID_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "orbigroupoid._wordcore",
                    ["src/orbigroupoid/_wordcore.pyx"],
                    optional=True,
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
