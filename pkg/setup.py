"""Build glue for the optional compiled kernel.

The extension is best-effort: if Cython or a C compiler is unavailable the
install still succeeds and the package falls back to the pure-Python kernels
at import time (see hadpi._core).
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "hadpi._kernel",
                ["src/hadpi/_kernel.pyx"],
                extra_compile_args=["-O2"],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
