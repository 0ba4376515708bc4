"""Build hook for the optional compiled grid kernels.

If Cython or a C compiler is missing the package still installs and
``stratum.kernels`` falls back to the pure-Python implementation.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("stratum._kernels", ["src/stratum/_kernels.pyx"])],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )
except Exception as exc:  # pragma: no cover - depends on the build host
    print(f"compiled kernels disabled: {exc}")

setup(ext_modules=ext_modules)
