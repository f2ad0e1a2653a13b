import re

from setuptools import find_packages, setup


NAME = "fqilab"
SUMMARY = "Regularized fitted Q-iteration with kernels and two-layer networks"

with open(f"{NAME}/__init__.py", "rb") as fh:
    init_text = fh.read().decode()
    VERSION = re.search(r"__version__ = \"(.*?)\"", init_text).group(1)
    match = re.search(r"__numpy_version_range__ = \"(.*?)\", \"(.*?)\"", init_text)
    numpy_min_ver, numpy_max_ver = match.group(1), match.group(2)
    match = re.search(r"__scipy_version_range__ = \"(.*?)\", \"(.*?)\"", init_text)
    scipy_min_ver, scipy_max_ver = match.group(1), match.group(2)


runtime_deps = [
    f"numpy>={numpy_min_ver},<{numpy_max_ver}",
    f"scipy>={scipy_min_ver},<{scipy_max_ver}",
    "pandas>=1.5",
    "PyYAML",
]

extras_require = {
    "dev": [
        "black",
        "flake8",
        "flake8-black",
        "pep8-naming",
        "pytest",
        "setuptools",
        "wheel",
        "twine",
    ],
    "docs": [
        "sphinx",
        "numpy",
        "scipy",
        "pandas",
        "PyYAML",
    ],
}

setup(
    name=NAME,
    version=VERSION,
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    python_requires=">=3.8.0",
    install_requires=runtime_deps,
    extras_require=extras_require,
    license="BSD 2-Clause",
    description=SUMMARY,
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    zip_safe=True,
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: BSD License",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Artificial Intelligence",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    entry_points={
        "console_scripts": [
            "fqilab = fqilab.harness:main",
        ],
    },
)
