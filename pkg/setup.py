import os

from setuptools import setup

ext_modules = []
if os.environ.get("BURESCORR_PURE_PYTHON") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "burescorr._kernels",
                    ["src/burescorr/_kernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level="3",
        )
    except ImportError:
        # No Cython: ship the pure-Python backend only.
        ext_modules = []

setup(ext_modules=ext_modules)
