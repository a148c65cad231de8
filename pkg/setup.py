"""Build the optional compiled kernel.

The extension is a convenience, not a requirement: if Cython or a C
compiler is missing the install proceeds and the package falls back to
the numpy kernel loops at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/obddkit/_speedups.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
