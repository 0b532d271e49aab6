import numpy
from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/zonalab/_core/_gegcore.pyx",
        compiler_directives={"language_level": 3},
    )
    for ext in ext_modules:
        ext.include_dirs.append(numpy.get_include())
        ext.extra_compile_args = ["-O3"]
except ImportError:
    # pure-python install still works; _core falls back to the numpy backend
    ext_modules = []

setup(ext_modules=ext_modules)
