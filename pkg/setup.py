from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    # -ffp-contract=off keeps double arithmetic bit-identical with the
    # pure-Python fallback (no fused multiply-adds).
    extensions = cythonize(
        [
            Extension(
                "biperc._kernels",
                ["src/biperc/_kernels.pyx"],
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
