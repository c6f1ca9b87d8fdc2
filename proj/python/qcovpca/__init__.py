"""Covariance-matrix preparation and quantum-PCA toolkit."""

from qcovpca._core import *  # noqa: F401,F403
from qcovpca._core import __doc__  # noqa: F401
