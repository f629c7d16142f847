#!/usr/bin/env python
#   License: 2-clause BSD; see LICENSE.txt for details
import setuptools
import re

from textwrap import dedent
from lmocalc import __version__


def requires(prefix=''):
    """Retrieve requirements from requirements.txt
    """
    try:
        reqs = map(str.strip, open(prefix + 'requirements.txt').readlines())
        return [req for req in reqs if not re.match(r'\W', req)]
    except Exception:
        pass
    return []


setuptools.setup(
    name='lmocalc',
    version=__version__,
    install_requires=requires(),
    extras_require={'test': requires('test-')},
    license='BSD',
    long_description=dedent("""\
        Exact LMO functor calculator
        ----------------------------
        Evaluates cobordism expressions to truncated series of Jacobi
        diagrams with exact rational coefficients, and checks the algebraic
        identities those values satisfy.

        Getting Started:
        ----------------

          $ pip install -r requirements.txt .
          $ lmocalc eval "Y o (v+ x v+ x v+)"
          $ lmocalc check all

        """),
    python_requires='>=3.8',
    packages=['lmocalc'],
    data_files=[("", ["LICENSE.txt"])],
    entry_points={
        'console_scripts': ['lmocalc = lmocalc.cli:main']},
    classifiers=['Development Status :: 4 - Beta',
                 'Intended Audience :: Science/Research',
                 'Natural Language :: English',
                 'Operating System :: POSIX :: Linux',
                 'Programming Language :: Python',
                 'Programming Language :: Python :: 3',
                 'Topic :: Scientific/Engineering :: Mathematics',
                 'Topic :: Utilities'],
)
