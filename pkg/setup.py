"""Build script for the optional compiled kernels.

The package is fully functional without the extension; the import machinery
in ``anyonsim.kernels`` falls back to the NumPy implementations when the
compiled module is absent.  Build failures are therefore demoted to warnings.
"""

import warnings

import numpy
from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the extension if possible, otherwise warn and continue."""

    def run(self):
        try:
            super().run()
        except Exception as exc:
            warnings.warn(f"compiled kernels skipped ({exc}); "
                          "pure-Python fallback will be used", RuntimeWarning)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"building {ext.name} failed ({exc}); "
                          "pure-Python fallback will be used", RuntimeWarning)


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        warnings.warn("Cython not available; compiled kernels skipped",
                      RuntimeWarning)
        return []
    ext = Extension(
        "anyonsim.kernels._ckernels",
        ["src/anyonsim/kernels/_ckernels.pyx"],
        include_dirs=[numpy.get_include()],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
