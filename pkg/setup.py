import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("QUARTICLE_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:  # pure-Python install; kernels fall back to numpy
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "quarticle._kernels",
                    ["src/quarticle/_kernels.pyx"],
                    # plain complex products; skips the C99 Annex G inf/nan fixups
                    extra_compile_args=["-O3", "-fcx-limited-range"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
