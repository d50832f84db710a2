"""Build script: compiles the optional scan kernel, falls back to pure Python."""

import sys

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "dutchdraw._engine._kernel",
                ["src/dutchdraw/_engine/_kernel.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"dutchdraw: compiled kernel skipped ({exc}); "
          "the pure-Python engine will be used", file=sys.stderr)
    ext_modules = []

setup(ext_modules=ext_modules)
