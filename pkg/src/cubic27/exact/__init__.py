from .rational import Q, q
from .mpoly import MPoly, monomials, parse_poly
from .jet import Jet, Jet4, jet_eval, PoleError
from .quadext import QuadExt5, SQRT5
from .linalg import mat_rank, mat_nullspace, mat_det, rref, certified_rank
from .sampling import sample_point, sample_panel, SamplingExhausted
