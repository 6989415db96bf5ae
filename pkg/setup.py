"""Build script for the compiled raster kernels.

The package works without the extension (a pure-Python fallback is selected
at import time), so the build degrades gracefully when Cython or a C
compiler is unavailable.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "bpforge.raster._kernels",
                ["src/bpforge/raster/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
