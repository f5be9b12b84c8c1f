"""Builds the optional compiled kernel; the package works without it."""

import logging

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing or failed
            logging.warning("compiled kernel not built (%s); using pure Python", exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            logging.warning("failed to build %s (%s); using pure Python", ext.name, exc)


try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("stratkit._ckernel", ["src/stratkit/_ckernel.pyx"],
                   extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions, cmdclass={"build_ext": OptionalBuildExt})
