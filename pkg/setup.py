"""Build the compiled stepping kernels.

The extension is optional: if Cython is unavailable or compilation fails,
the install completes anyway and zakbench falls back to the pure-Python
kernels in zakbench._kernels_py at import time.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Degrade to the pure-Python kernels when compilation is impossible."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler or broken toolchain
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(f"warning: compiled kernels skipped ({exc}); "
              "falling back to the pure-Python implementation")


try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "zakbench._kernels",
                ["src/zakbench/_kernels.pyx"],
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        language_level="3",
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
