import os
import sys

from setuptools import setup

ext_modules = []
if os.environ.get("TROPREC_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/troprec/_closure_cy.pyx"],
            language_level=3,
        )
    except Exception as exc:  # no Cython, no compiler, etc.
        print("troprec: skipping compiled closure kernel (%s); "
              "the pure-Python fallback will be used" % exc, file=sys.stderr)

setup(ext_modules=ext_modules)
