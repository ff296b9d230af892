"""Build script: compiles the optional Cython SAT core.

The package is fully functional without the extension; the pure-Python
solver in svsec.engine.sat.pycore is selected at import time when the
compiled core is unavailable.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("svsec.engine.sat._satcore",
                   ["src/svsec/engine/sat/_satcore.pyx"])],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-env dependent
    print(f"svsec: building without compiled SAT core ({exc})")

setup(ext_modules=ext_modules)
