"""
Packaging of the optimal-execution benchmark.

    pip install .[dev]           # library, CLI and test/lint tools
    pytest tests -m "not slow"
"""

import re

from setuptools import find_packages, setup


# Every dependency with its version requirement, if any. Extras are assembled from this list by name.
_deps = [
    "black",
    "dacite",
    "isort",
    "numpy>=1.22",
    "omegaconf>=2.1",
    "pandas>=1.5",
    "pytest",
    "pyyaml",
    "rich",
    "ruff>=0.0.241",
    "tqdm",
    "xarray",
]

# name -> requirement, e.g. "numpy" -> "numpy>=1.22"
deps = {name: req for req, name in (re.findall(r"^(([^!=<>~]+)(?:[!=<>~].*)?$)", x)[0] for x in _deps)}


def deps_list(*pkgs):
    return [deps[pkg] for pkg in pkgs]


install_requires = deps_list("numpy", "xarray", "pandas", "omegaconf", "dacite", "pyyaml", "tqdm", "rich")

extras = {
    "quality": deps_list("black", "isort", "ruff"),
    "test": deps_list("pytest"),
}
extras["dev"] = extras["quality"] + extras["test"]

setup(
    name="optimal_execution_sgd",
    version="0.1.0",
    description="Optimal execution of large orders: closed-form schedule vs. projected SGD variants",
    long_description=open("README.md", "r", encoding="utf-8").read(),
    long_description_content_type="text/markdown",
    packages=find_packages(include=["src", "src.*"]),
    package_data={"src": ["configs/*.yaml"]},
    python_requires=">=3.9.0",
    install_requires=install_requires,
    extras_require=extras,
    entry_points={"console_scripts": ["optimal-execution=src.cli:main"]},
    classifiers=[
        "Intended Audience :: Financial and Insurance Industry",
        "Intended Audience :: Science/Research",
        "Programming Language :: Python :: 3",
        "Topic :: Office/Business :: Financial :: Investment",
    ],
    keywords="optimal execution price impact stochastic gradient descent adagrad rmsprop adam",
    zip_safe=False,
)
