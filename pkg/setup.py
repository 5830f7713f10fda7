import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "rootcert._svenum",
                ["src/rootcert/_svenum.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )

# The extension is optional: rootcert.slprobe falls back to the pure-Python
# enumerator when the compiled module is absent.
setup(ext_modules=ext_modules)
