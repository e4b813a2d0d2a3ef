import os

from setuptools import Extension, setup

# The mod-p elimination kernel has a Cython version working on C arrays of
# uint64 with __int128 intermediate products.  Building it is optional: if
# Cython or a C compiler is missing the package installs anyway and the
# pure-Python kernel in ncinv.linalg._modp_py is used instead.

PYX = "src/ncinv/linalg/_modp_cy.pyx"

ext_modules = []
if os.environ.get("NCINV_NO_EXT") != "1" and os.path.exists(PYX):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "ncinv.linalg._modp_cy",
                    [PYX],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
