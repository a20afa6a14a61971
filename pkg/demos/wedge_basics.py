"""
Wedging by a coframe
====================

Build a small element of the mixed exterior algebra, wedge it with the
standard coframe and look at the matrix of the map.
"""

from wedgemaps.space import SpaceSig, TensorElement, random_coframe
from wedgemaps.wedge import MapSpec, apply, build_matrix, wedge_once
from wedgemaps.oracle import rank
import random

##############################################################################
# A scalar in N=3 with no form or Z indices. One wedge gives the coframe
# itself, sum_i (v*)^i e_i.

sig = SpaceSig(N=3, l=0, n=0, k=0)
one = TensorElement.unit(sig, (), ())
print(wedge_once(one).dumps())

##############################################################################
# The s-fold map is normalized so that it matches the direct formula.
# Two wedges of the scalar give the second power of the coframe.

print(apply(one, 2).dumps())

##############################################################################
# Matrix of W for N=4, l=0, s=1, n=1, k=1. Rows and columns are labelled by
# (form index, Z index) pairs in lexicographic order.

spec = MapSpec(4, 0, 1, 1, 1)
M = build_matrix(spec)
print(spec, "shape", M.shape, "rank", rank(M).rank)
print(M.to_csv()[:400])

##############################################################################
# Any invertible coframe gives the same rank.

rng = random.Random(7)
cf = random_coframe(4, rng)
print("random coframe rank:", rank(build_matrix(spec, cf)).rank)
