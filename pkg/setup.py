#!/usr/bin/env python
import os
import re
import codecs
from setuptools import setup, find_packages


def read_info(name):
    # poolseq imports numpy, which is not available before installation
    with codecs.open(os.path.join("poolseq", "__init__.py"), "r", "utf-8") as fp:
        source = fp.read()
    return re.search(r"^%s = (.*)$" % name, source, re.M).group(1)


version_info = read_info("version_info").strip("()").split(", ")

if os.path.exists("README.md"):
    long_description = codecs.open('README.md', "r", "utf-8").read()
else:
    long_description = "Prevalence estimation from pooled tests under fixed and inverse binomial sampling"

setup(
    name="poolseq",
    version=".".join(version_info),
    description="Exact bias and MSE comparison of prevalence estimators for pooled sequential testing",
    author=read_info("__author__").strip("\"'"),
    platforms=["any"],
    license="BSD",
    packages=find_packages(),
    zip_safe=True,
    python_requires='>=3.8',
    install_requires=[
        'numpy>=1.17',
        'scipy>=1.3',
        'pandas>=1.5',
    ],
    extras_require={
        'test': ['pytest', 'pytest-cov', 'hypothesis'],
        'doc': ['sphinx'],
    },
    entry_points={
        'console_scripts': ['poolseq = poolseq.cli:main'],
    },
    classifiers=[
        # Picked from
        #    http://pypi.python.org/pypi?:action=list_classifiers
        "Development Status :: 3 - Alpha",
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: BSD License",
        "Operating System :: OS Independent",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    long_description=long_description,
    long_description_content_type='text/markdown',
    tests_require=('pytest', 'hypothesis'),
)
