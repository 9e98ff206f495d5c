from . import errors
from . import arith
from . import solution_counts
from . import exp_sums
from . import titchmarsh

__version__ = "0.0.1"
