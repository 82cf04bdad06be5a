from Cython.Build import cythonize
from setuptools import Extension, setup

setup(
    ext_modules=cythonize(
        [Extension("critsurf._ckernels", ["src/critsurf/_ckernels.pyx"], extra_compile_args=["-O2"])],
        language_level=3,
    ),
)
