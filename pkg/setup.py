"""Build the optional Cython kernels; the package still installs without them."""

from setuptools import setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "ncpart._kernels",
                ["src/ncpart/_kernels.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
