"""Build script: compiles the optional weighting-sum kernel.

The extension is a pure speedup; if Cython or a C compiler is missing the
install still succeeds and the package falls back to the Python kernel.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover
            print("warning: compiled kernel skipped (%s)" % exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover
            print("warning: compiled kernel skipped (%s)" % exc)


try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "pixtonkdv._wsumc",
                ["src/pixtonkdv/_wsumc.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:  # pragma: no cover
    extensions = []

setup(ext_modules=extensions, cmdclass={"build_ext": optional_build_ext})
