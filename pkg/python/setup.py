# Copyright 2026 cppforge contributors.
# This Software is subject to the terms of the XMOS Public Licence: Version 1.
import setuptools

# Another repository might depend on python code defined in this one.  The
# procedure to set up a suitable python environment for that repository may
# pip-install this one as editable using this setup.py file.  The 3rd-party
# modules listed here require the same major version and at least the same
# minor version as specified in the requirements.txt file, and the same
# modules should appear in the requirements.txt file as given below.
setuptools.setup(
    name='cppforge',
    version='0.1.0',
    packages=setuptools.find_packages(),
    python_requires='>=3.9',
    install_requires=[
        'flake8~=6.1',
        'numpy~=1.24',
        'pandas~=2.0',
        'pydantic~=2.5',
        'pydantic-settings~=2.1',
        'pylint~=3.0',
        'pytest~=7.4',
        'pytest-xdist~=3.5',
        'sympy~=1.12',
    ],
    entry_points={
        'console_scripts': [
            'cppforge = cppforge.cli:main',
        ],
    },
    dependency_links=[
    ],
)
