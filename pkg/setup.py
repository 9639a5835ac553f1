from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

# The compiled grid kernel is optional: without it the package falls back to
# the pure-Python implementation in patchquilt.gridkernel._pyfill.
# -ffp-contract=off keeps the C kernel bit-identical to the Python fallback
# (no FMA contraction of the Horner multiply-add).
if cythonize is not None:
    extensions = cythonize(
        [
            Extension(
                "patchquilt.gridkernel._gridcore",
                ["src/patchquilt/gridkernel/_gridcore.pyx"],
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
else:
    extensions = []

setup(ext_modules=extensions)
