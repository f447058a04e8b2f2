"""Build script: compiles the optional Gray-walk extension when Cython and a
C compiler are available.  The package works without it; tspvr.kernels falls
back to the pure-Python implementation at import time."""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Never let a failed extension build break the install."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing entirely
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(f"WARNING: could not build the compiled kernel ({exc}); "
              "falling back to the pure-Python implementation")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    exts = [
        Extension(
            "tspvr._graywalk",
            ["src/tspvr/_graywalk.pyx"],
            extra_compile_args=["-O3"],
        )
    ]
    return cythonize(exts, compiler_directives={"language_level": "3"})


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
