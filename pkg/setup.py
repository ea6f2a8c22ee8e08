"""Build script: compiles the optional native kernels when Cython is present.

The package is fully functional without the extension (a numpy fallback is
selected at import); set VALUENLI_SKIP_NATIVE=1 to skip compilation.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("VALUENLI_SKIP_NATIVE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "valuenli.kernels._native",
                    ["src/valuenli/kernels/_native.pyx"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError as exc:
        print(f"note: native kernels not built ({exc}); using the pure fallback")

setup(ext_modules=ext_modules)
