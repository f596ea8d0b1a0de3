"""Optional Cython build for the lattice kernels.

Without a compiler or Cython the package installs and runs on the
pure-Python kernels.
"""
from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("hamlattice._kernels", ["src/hamlattice/_kernels.pyx"])],
        language_level=3,
    )
except Exception:  # pragma: no cover - build environment dependent
    ext_modules = []

setup(ext_modules=ext_modules)
