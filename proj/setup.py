import os

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

eigen_include = os.environ.get("EIGEN3_INCLUDE_DIR", "/usr/include/eigen3")

ext = Pybind11Extension(
    "xyzdm._core",
    sources=[
        "bindings/module.cpp",
        "src/model.cpp",
        "src/thermal.cpp",
        "src/entanglement.cpp",
        "src/teleportation.cpp",
        "src/sweep.cpp",
        "src/verify.cpp",
    ],
    include_dirs=["include", eigen_include],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
