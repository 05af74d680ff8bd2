"""CMake-driven build of the samsim extension module.

`pip install .` (or `pip install -e . --no-build-isolation`) configures the
CMake project, builds the pybind11 module, and places it inside the python
package.
"""

import shutil
import subprocess
import sys
from pathlib import Path

from setuptools import setup
from setuptools.command.build_ext import build_ext
from setuptools.extension import Extension


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source_dir = Path(__file__).resolve().parent
        build_dir = Path(self.build_temp) / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)

        out_dir = Path(self.get_ext_fullpath(ext.name)).resolve().parent
        subprocess.run(
            [
                "cmake",
                str(source_dir),
                "-DCMAKE_BUILD_TYPE=Release",
                "-DSAMSIM_BUILD_TESTS=OFF",
                "-DSAMSIM_BUILD_PYTHON=ON",
                f"-DPython3_EXECUTABLE={sys.executable}",
            ],
            cwd=build_dir,
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_core", "-j"],
            check=True,
        )
        built = next((build_dir / "python" / "samsim").glob("_core*.so"))
        out_dir.mkdir(parents=True, exist_ok=True)
        shutil.copy2(built, out_dir / built.name)


setup(
    packages=["samsim"],
    package_dir={"": "python"},
    ext_modules=[CMakeExtension("samsim._core")],
    cmdclass={"build_ext": CMakeBuild},
)
