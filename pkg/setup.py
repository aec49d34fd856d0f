"""Builds the optional compiled float kernels; the package works without them."""

from setuptools import setup
from setuptools.command.build_ext import build_ext

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None


class OptionalBuildExt(build_ext):
    """Skip the extension when no compiler is available; kernels.py falls back."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            print(f"warning: compiled kernels not built ({exc}); using the pure-Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: could not build {ext.name} ({exc}); using the pure-Python fallback")


ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        ["src/ioacheck/_kernels.pyx"],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
