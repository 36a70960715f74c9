import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("K3DISC_NO_EXTENSION"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("k3disc._kernels", ["src/k3disc/_kernels.pyx"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
