"""Build script for the optional compiled accelerator.

The package is fully functional without it; polynomials.py falls back
to pure-Python loops when compdet._accel is absent.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
    extensions = cythonize(
        [Extension("compdet._accel", ["src/compdet/_accel.pyx"])],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
