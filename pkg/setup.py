"""Builds the optional compiled kernels. Pure-python fallback is used when the
extension is unavailable, so failure to compile is not fatal for installs."""
import numpy
from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/wflsa/_cykernels.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(
    ext_modules=ext_modules,
    include_dirs=[numpy.get_include()],
)
