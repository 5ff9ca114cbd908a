"""Build script for the optional compiled kernels.

The Cython extension ``bframe._ckernels`` is built when Cython, numpy and a
C compiler are available. If any of them is missing the package still
installs and ``bframe.kernels`` falls back to the numpy implementation.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("BFRAME_NO_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        extensions = [
            Extension(
                "bframe._ckernels",
                ["src/bframe/_ckernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                optional=True,
            )
        ]
        ext_modules = cythonize(
            extensions,
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
