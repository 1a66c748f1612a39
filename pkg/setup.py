"""Build script; compiles the optional polynomial-kernel extension.

Set JETSYM_NO_EXT=1 to skip the Cython build and install the pure-Python
package only.  The package selects the compiled kernel at import time when
present and falls back to the Python twin otherwise.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("JETSYM_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/jetsym/_kernel_cy.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
