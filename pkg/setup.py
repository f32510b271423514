"""Builds the optional compiled group kernels; the package works without them."""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("VILENKIN_HARDY_NO_EXT") != "1":
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("vilenkin_hardy.groups._kernels", ["src/vilenkin_hardy/groups/_kernels.pyx"],
                       include_dirs=[numpy.get_include()],
                       define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
