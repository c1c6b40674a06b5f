from setuptools import setup, Extension

# The compiled elimination/composition kernel is optional: the package falls
# back to the pure-Python twin in superweil._elim_py when the extension is
# missing (see superweil.kernels).
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("superweil._elim_fast", ["src/superweil/_elim_fast.pyx"])],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
