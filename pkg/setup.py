#!/usr/bin/python3
# -*- coding: utf-8 -*-

from setuptools import setup


# Read the requirements from the requirements.txt file
with open("requirements.txt") as fp:
    install_requires = [line for line in fp.read().splitlines() if line and not line.lstrip().startswith("#")]


setup(
    name="curvature_structures",
    version="0.1.0",
    description="""Symbolic curvature tensors and a classifier of curvature restricted structures""",
    long_description="".join(open("README.md", encoding="utf-8").readlines()),
    long_description_content_type="text/markdown",
    license="MIT",
    packages=[
        "curvature_structures",
        "curvature_structures.cli",
        "curvature_structures.curvature",
        "curvature_structures.expr",
        "curvature_structures.geometry",
        "curvature_structures.structures",
        "curvature_structures.tensor",
        "curvature_structures.utils",
    ],
    include_package_data=True,
    install_requires=install_requires,
    entry_points={
        "console_scripts": ["curvstruct=curvature_structures.start:start"],
    },
    python_requires=">= 3.9",
    zip_safe=False,
    extras_require={
        "test": ["pytest==8.2.2", "sympy==1.12.1"],
    },
)
