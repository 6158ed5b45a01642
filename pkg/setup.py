"""Build script: compiles the optional Cython kernel module.

The package is pure Python plus one optional compiled extension
(``ncsieve._speedups``).  If Cython or a C compiler is unavailable, or the
extension fails to build, installation proceeds and the pure-Python kernel
twins are selected at import time.  Set NCSIEVE_NO_EXT=1 to skip the
extension entirely.
"""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class _OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler and friends
            print(f"ncsieve: skipping compiled kernels ({exc})")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"ncsieve: skipping {ext.name} ({exc})")


ext_modules = []
if os.environ.get("NCSIEVE_NO_EXT") != "1":
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "ncsieve._speedups",
                    ["src/ncsieve/_speedups.pyx"],
                    include_dirs=[numpy.get_include()],
                    extra_compile_args=["-O2"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except Exception as exc:
        print(f"ncsieve: Cython unavailable, building pure ({exc})")

setup(ext_modules=ext_modules, cmdclass={"build_ext": _OptionalBuildExt})
