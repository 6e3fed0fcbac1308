from Cython.Build import cythonize
from setuptools import Extension, setup

# -ffp-contract=off keeps the compiled kernels bit-identical to the
# pure-Python fallback (no fused multiply-adds)
extensions = [
    Extension(
        "wstate._solver_core",
        ["src/wstate/_solver_core.pyx"],
        extra_compile_args=["-O3", "-ffp-contract=off"],
    )
]

setup(ext_modules=cythonize(extensions, language_level=3))
