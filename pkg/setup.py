from setuptools import setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python fallback kernels are used
    ext_modules = []
else:
    ext_modules = cythonize(
        ["src/dconormal/_kernels/_ckernel.pyx"],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )

setup(ext_modules=ext_modules)
