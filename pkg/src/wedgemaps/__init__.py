"""Exact construction and classification of wedge-by-coframe maps.

For a coframe ``e: V -> Z`` between N-dimensional spaces and a subspace
``V^l`` of codimension ``l``, the map ``W_s`` sends
``X in Lambda^n (V^l)* (x) Lambda^k Z`` to ``X ^ e ^ ... ^ e`` (s factors).
"""
from .classify import Classification, classify, classify_by_dims, cokernel_witness, dual, iter_specs, kernel_witness
from .errors import DomainError, PreconditionError, UnsupportedError
from .indexkit import MultiIndex, SignedIndex, binom, interleave_sign, normalize, subsets
from .matrix import RationalMatrix
from .oracle import RankResult, Side, SolveResult, SolveStatus, one_sided_inverse, rank, solve
from .space import Coframe, SpaceSig, TensorElement, basis_keys, dim, make_element, restricted_columns, standard_coframe
from .systems import CoeffTable, SystemParams, coeffs, inj_system, left_inverse, right_inverse, surj_system
from .wedge import MapSpec, apply, build_matrix, expand_term, wedge_once

__version__ = "0.1.0"
