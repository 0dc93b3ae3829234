"""Builds the optional compiled kernels; the package works without them."""
from setuptools import Extension, setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "hyperbarrier._kernels",
                ["src/hyperbarrier/_kernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O2"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
