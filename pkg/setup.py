"""Build script: compiles the question-order walker when Cython and a C
compiler are available; the package works without it via the pure-Python
fallback (slower, which matters only for the n = 6 exhaustive check)."""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "knightspies._molewalk",
                ["src/knightspies/_molewalk.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
