"""Build script: compiles the optional Cython term-arithmetic kernel.

The package works without the extension (a pure-Python twin is selected at
import time), so a failed extension build is tolerated.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("ckexpand._kernel_c", ["src/ckexpand/_kernel_c.pyx"])],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
