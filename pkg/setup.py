"""Build script: compiles the scan kernels when Cython and a C compiler are
available, otherwise installs the pure NumPy fallback only."""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "rainbowap._kernels._fast",
                ["src/rainbowap/_kernels/_fast.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # no Cython / no compiler: fallback kernels still work
    print(f"skipping compiled kernels ({exc}); NumPy fallback will be used")

setup(ext_modules=ext_modules)
