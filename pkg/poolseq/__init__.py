"""Initialize the poolseq package"""

__author__ = "poolseq developers"
version_info = (0, 1, 0)
__version__ = '.'.join(str(i) for i in version_info)

# make everything available in root package for convenience
from .exc import *          # @IgnorePep8
from .dist import *         # @IgnorePep8
from .design import *       # @IgnorePep8
from .estim import *        # @IgnorePep8
from .evaluate import *     # @IgnorePep8
from .search import *       # @IgnorePep8
from .montecarlo import *   # @IgnorePep8
