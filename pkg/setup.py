#!/usr/bin/env python3
# -*- coding: utf-8 -*-
from setuptools import setup

# To use a consistent encoding
from codecs import open
from os import path

here = path.abspath(path.dirname(__file__))

# read version string
with open(path.join(here, "concurrence_tools", "__init__.py")) as version_file:
    version = eval(version_file.read().split("\n")[0].split("=")[1].strip())

# Get the long description from the README file
with open(path.join(here, "README.md"), encoding="utf-8") as f:
    long_description = f.read()

# Get the history from the CHANGELOG file
with open(path.join(here, "CHANGELOG.md"), encoding="utf-8") as f:
    history = f.read()

setup(
    name="concurrence-tools",
    version=version,
    description="Concurrence classes (EPR, W, GHZ) of pure multipartite quantum states",
    long_description=long_description + "\n\n" + history,
    long_description_content_type="text/markdown",
    author="The concurrence-tools authors",
    packages=["concurrence_tools"],
    include_package_data=True,
    install_requires=["scipy", "numpy", "tqdm"],
    license="MIT",
    zip_safe=False,
    setup_requires=["pytest-runner"],
    tests_require=["pytest", "hypothesis"],
    keywords="quantum, entanglement, concurrence, multipartite, GHZ, W state",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Physics",
        "License :: OSI Approved :: MIT License",
        "Natural Language :: English",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
    ],
    entry_points={
        "console_scripts": ["concurrence-tools = concurrence_tools.__main__:main"]
    },
)
