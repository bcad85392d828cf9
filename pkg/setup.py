from setuptools import Extension, setup

# The compiled kernel is an optional accelerator: the package falls back to
# the pure-Python implementation in activetime._kernels.flow_py when the
# extension is unavailable.
try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "activetime._kernels._flow",
                ["src/activetime/_kernels/_flow.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
