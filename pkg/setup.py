#!/usr/bin/env python3

import sys
import randexp

from setuptools import setup, find_packages
from setuptools.command.test import test as TestCommand


class PyTest(TestCommand):
    user_options = [('pytest-args=', 'a', "Arguments to pass to py.test")]

    def initialize_options(self):
        super().initialize_options()
        self.pytest_args = []

    def finalize_options(self):
        super().finalize_options()

    def run_tests(self):
        #import here, cause outside the eggs aren't loaded
        import pytest
        errno = pytest.main(self.pytest_args)
        sys.exit(errno)

setup(
    name='randexp',
    version=randexp.VERSION,
    description='thermodynamic formalism for random exponential maps',
    long_description=open('README.rst', encoding='utf-8').read(),
    author='The randexp developers',
    license='GPL-3+',
    packages=find_packages(exclude=['tests', 'tests.*']),
    tests_require=['pytest'],
    cmdclass = {'test': PyTest},
    entry_points={
        'console_scripts': [
                'randexp=randexp.main:main'
        ],
    },
    install_requires=[
        'numpy',
        'scipy',
        'joblib',
    ],
    extras_require={
        'progress': ['progressbar'],
        'completion': ['argcomplete'],
    },
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: GNU General Public License v3 or later (GPLv3+)',
        'Operating System :: POSIX',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
)
