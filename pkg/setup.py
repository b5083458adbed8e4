"""Installation script for ffpgn.

Additional configuration settings are in ``setup.cfg``.

:copyright: Copyright 2024 the ffpgn developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
import sys

try:
    from setuptools import setup
    from setuptools import Command
except ImportError:
    from distutils.core import setup
    from distutils.core import Command

# Project details
project_name = 'ffpgn'
project_version = __import__(project_name).__version__
project_readme_fname = 'README.rst'


# Test suite
class ProjectTest(Command):
    user_options = []

    def initialize_options(self):
        pass

    def finalize_options(self):
        pass

    def run(self):
        import unittest
        suite = unittest.TestLoader().discover('tests')
        result = unittest.TextTestRunner(verbosity=2).run(suite)
        sys.exit(not result.wasSuccessful())


# README
with open(project_readme_fname) as f:
    project_readme = f.read()


# Project setup
setup(
    name = project_name,
    version = project_version,
    description = 'Parametric geometry of numbers over function fields',
    long_description = project_readme,
    author = 'the ffpgn developers',

    packages = ['ffpgn'],
    python_requires = '>=3.8',

    entry_points = {
        'console_scripts': ['ffpgn = ffpgn.cli:parse'],
    },

    extras_require = {
        'yaml': ['PyYAML'],
    },

    cmdclass = {'test': ProjectTest},

    classifiers = [
        'Development Status :: 4 - Beta',
        'License :: OSI Approved :: Apache Software License',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Programming Language :: Python :: 3.12',
        'Topic :: Scientific/Engineering :: Mathematics',
    ]
)
