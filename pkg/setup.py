import os

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover
    cythonize = None

directives = {
    "language_level": "3",
    "boundscheck": False,
    "wraparound": False,
    "cdivision": True,
    "initializedcheck": False,
    "embedsignature": True,
}

ext_modules = []
if cythonize is not None and not os.environ.get("NEWSPROMINENCE_NO_EXT"):
    ext_modules = cythonize(
        [
            Extension(
                "newsprominence._ckernels",
                ["src/newsprominence/_ckernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                # the pure-Python kernels take over when compilation fails
                optional=True,
            )
        ],
        compiler_directives=directives,
    )

setup(ext_modules=ext_modules)
