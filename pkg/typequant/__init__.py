from ._version import __version__
from .codec import decode
from .codec import encode
from .enumeration import code_rate
from .enumeration import count_types
from .enumeration import max_n_for_rate
from .enumeration import rank
from .enumeration import unrank
from .errors import TypeQuantError
from .lattice import nearest
from .lattice import quantize
from .lattice import quantize_biased
from .lattice import quantize_dual
from .simplex import covering_radius
from .simplex import distance
from .simplex import Distribution
from .simplex import LatticeSpec
from .simplex import Norm
from .simplex import TypePoint
from .trees import gilbert_moore_quantize
from .trees import huffman_quantize
