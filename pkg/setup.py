"""Build script: compiles the optional accelerator extension.

The package is pure Python; `tropcyl._speedups` is a Cython module that
accelerates the integer 2x2 kernels (monodromy products, fan-closure
recurrences, grid sweeps).  If Cython or a C compiler is unavailable the
build falls back to the pure-Python kernels, selected at import time.
Set TROPCYL_NO_EXT=1 to skip the extension entirely.
"""

import os
import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """build_ext that degrades to a pure-Python install on any failure."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            warnings.warn(f"skipping accelerator extension: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"skipping {ext.name}: {exc}")


ext_modules = []
if not os.environ.get("TROPCYL_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "tropcyl._speedups",
                    ["src/tropcyl/_speedups.pyx"],
                    extra_compile_args=["-O2"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(
    ext_modules=ext_modules,
    cmdclass={"build_ext": OptionalBuildExt},
)
