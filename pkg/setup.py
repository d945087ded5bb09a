import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("KGAP_NO_EXTENSION"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("kgap.sim._radio", ["src/kgap/sim/_radio.pyx"])],
            compiler_directives={"language_level": 3},
        )

setup(ext_modules=ext_modules)
