import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

core_sources = sorted(
    p for p in glob.glob("src/*.cpp") if not p.endswith("bindings.cpp")
)

ext_modules = [
    Pybind11Extension(
        "eodownlink._core",
        ["src/bindings.cpp", *core_sources],
        include_dirs=["include", "vendor"],
        cxx_std=20,
    )
]

setup(ext_modules=ext_modules, cmdclass={"build_ext": build_ext})
