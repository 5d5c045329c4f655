"""Build script for the compiled row-reduction kernel.

The extension is optional: if Cython or a C compiler is missing the
package still installs and falls back to the numpy implementation.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [Extension("solvedeg._rrefc", ["src/solvedeg/_rrefc.pyx"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
