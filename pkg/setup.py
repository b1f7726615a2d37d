from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # Pure-Python install: the package falls back to the numpy kernels.
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "adjmech._backend._ckernels",
                ["src/adjmech/_backend/_ckernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
