import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("NNJSD_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "nnjsd._kernels",
                    ["src/nnjsd/_kernels.pyx"],
                    # fp-contract=off keeps the series kernel bit-identical to the numpy fallback
                    extra_compile_args=["-O2", "-ffp-contract=off"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
