"""Association between two multivariate datasets.

RV coefficient, adaptive powered-correlation tests, per-variable
contribution decomposition with permutation thresholds, and the matching
simulation designs. Everything here is a thin binding over the C++ core;
results are bit-identical to the command line tool.
"""

from ._rvcontrib import *  # noqa: F401,F403
from ._rvcontrib import __doc__, __version__  # noqa: F401
