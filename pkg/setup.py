import os

from setuptools import Extension, setup

# The compiled kernel is optional: the package falls back to a pure-Python
# integrator with the same interface if the extension is absent or fails
# to build (see solenoid._backend).
ext_modules = []
if os.environ.get("SOLENOID_PURE_PYTHON") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("solenoid._kernels", ["src/solenoid/_kernels.pyx"])],
            language_level="3",
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
