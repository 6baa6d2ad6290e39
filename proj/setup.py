"""CMake-driven build of the _gsee_lab extension module."""

import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        import pybind11

        out = Path(self.get_ext_fullpath(ext.name)).resolve()
        out.parent.mkdir(parents=True, exist_ok=True)
        src = Path(__file__).resolve().parent
        build = Path(self.build_temp).resolve()
        build.mkdir(parents=True, exist_ok=True)
        subprocess.run(
            [
                "cmake",
                "-S", str(src),
                "-B", str(build),
                "-DCMAKE_BUILD_TYPE=Release",
                "-DGSEELAB_PYTHON=ON",
                f"-Dpybind11_DIR={pybind11.get_cmake_dir()}",
                f"-DPYTHON_EXECUTABLE={sys.executable}",
            ],
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build), "--target", "_gsee_lab", "-j2"],
            check=True,
        )
        built = next(build.glob("_gsee_lab*.so"))
        self.copy_file(str(built), str(out))


setup(
    packages=["gsee_lab"],
    package_dir={"": "python"},
    ext_modules=[CMakeExtension("_gsee_lab")],
    cmdclass={"build_ext": CMakeBuild},
    zip_safe=False,
)
