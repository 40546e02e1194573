from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "irswpsn.kernels._core",
        sources=["src/irswpsn/kernels/_core.pyx"],
        extra_compile_args=["-O3"],
    )
]

setup(ext_modules=cythonize(extensions, language_level=3))
