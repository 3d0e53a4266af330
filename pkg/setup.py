"""Build script for the optional compiled search kernel.

The package works without the extension (a pure-Python kernel is selected
at import time); building it just makes the backtracking searches fast.
"""
import os

from setuptools import setup

_PYX = "src/multituran/kernels/_speedups.pyx"

ext_modules = []
if os.path.exists(_PYX):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize([_PYX], compiler_directives={"language_level": "3"})
    except ImportError:
        pass

setup(ext_modules=ext_modules)
