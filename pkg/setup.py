"""
Possible resources:
  - https://packaging.python.org/guides/distributing-packages-using-setuptools/
"""

from setuptools import setup, find_packages

import qlattice


with open('README.rst') as file:
    longDescription = file.read()


setup(
    author='qlattice developers',
    classifiers=[
        'Development Status :: 4 - Beta',
        'Environment :: Console',
        'Intended Audience :: Education',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Natural Language :: English',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3 :: Only',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Programming Language :: Python :: Implementation :: CPython',
        'Topic :: Scientific/Engineering',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    description='Exact extremal combinatorics on Boolean and linear lattices.',
    install_requires=[
        'setuptools',
        'numpy',
        'scipy',
        'galois>=0.3',
        'networkx',
        'ruamel.yaml',
        'tomlkit',
        'configobj',
        'coloredlogs',
    ],
    entry_points={
        'console_scripts': [
            'qlattice = qlattice.cli:main',
        ],
    },
    keywords='extremal combinatorics q-analogue subspace lattice Sperner Erdos-Ko-Rado',
    long_description=longDescription,
    name='qlattice',
    packages=find_packages(exclude=['tests']),
    include_package_data=True,
    test_suite='tests',
    version=qlattice.__version__,
    platforms=['Darwin', 'Linux'],
    license='MIT',
)
