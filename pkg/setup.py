"""
Setup script for the argutopo package.
======================================

This script configures the installation, packaging, and entry points for argutopo,
the topological word-delay-embedding analysis of texts. It uses setuptools to define
package metadata, dependencies, package data (YAML defaults, toy model, reference
texts) and the `argutopo` console script.

Usage
-----
- Install the package locally: `pip install .`
- Install with test dependencies: `pip install .[tests]`
- Build a distribution: `python setup.py sdist bdist_wheel`
- Run an analysis: `argutopo analyze --model MODEL TEXTFILE...` (after installation)
"""
from setuptools import setup, find_packages

setup(
    name="argutopo",
    version="0.1.0",
    description="Persistent homology of word-delay embeddings of texts.",
    author="Andreas Rasmusson",
    packages=find_packages(),
    install_requires=[
        "numpy",
        "scipy",
        "matplotlib",
        "pyyaml",
        "loguru",
    ],
    extras_require={
        "tests": ["pytest"],
    },
    entry_points={
        "console_scripts": [
            "argutopo = argutopo.pipeline.cli:main",
        ]
    },
    include_package_data=True,
    package_data={
        "argutopo.yaml_files": ["*.yaml"],
        "argutopo": ["data/*.txt", "data/texts/*.txt"],
    },
    python_requires=">=3.10",
    classifiers=[
        "Programming Language :: Python :: 3",
        "Operating System :: POSIX :: Linux",
    ],
)
