# -----------------------------------------------------------------------------
#  Copyright (C) typequant Development Team
#
#  Distributed under the terms of the BSD License.  The full license is in
#  the file LICENSE.txt, distributed as part of this software.
# -----------------------------------------------------------------------------
import os

from setuptools import setup

here = os.path.dirname(os.path.abspath(__file__))

version_ns = {}
with open(os.path.join(here, "typequant", "_version.py")) as f:
    exec(f.read(), {}, version_ns)

pkg_data = {"typequant": ["tests/golden/*.tqnt"]}

setup_args = dict(
    name="typequant",
    version=version_ns["__version__"],
    packages=["typequant", "typequant.tests"],
    package_data=pkg_data,
    author="typequant Development Team",
    description="Fixed-rate quantization of probability distributions on the type lattice",
    long_description=open(os.path.join(here, "README.md")).read(),
    long_description_content_type="text/markdown",
    license="BSD",
    classifiers=[
        "License :: OSI Approved :: BSD License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.8",
    entry_points={"console_scripts": ["typequant = typequant.app:main"]},
)

install_requires = setup_args["install_requires"] = []
with open(os.path.join(here, "requirements.txt")) as f:
    for line in f:
        req = line.split("#", 1)[0].strip()
        if req:
            install_requires.append(req)

setup(**setup_args)
