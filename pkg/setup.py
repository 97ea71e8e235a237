"""Build the optional compiled kernels.

If Cython or a C compiler is unavailable the package still installs and
``rainbowap.kernels`` falls back to the pure-Python implementation.
"""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("RAINBOWAP_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "rainbowap._ckernels",
                    ["src/rainbowap/_ckernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except Exception as exc:  # pragma: no cover - build environment dependent
        print(f"rainbowap: building without compiled kernels ({exc})")

setup(ext_modules=ext_modules)
