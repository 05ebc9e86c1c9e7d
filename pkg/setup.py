"""Optional compiled shortest-path kernel.

The extension is a performance twin of the pure-Python kernel; if Cython or
a C compiler is unavailable the build proceeds without it and the package
falls back to the Python implementation at import time.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/equimetric/_kernels/_spath_cy.pyx"],
        language_level=3,
    )
    include_dirs = [numpy.get_include()]
except ImportError:
    include_dirs = []

for ext in ext_modules:
    ext.include_dirs.extend(include_dirs)

setup(ext_modules=ext_modules)
