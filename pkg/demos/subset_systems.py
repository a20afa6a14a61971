"""
Subset incidence systems
========================

The inclusion matrix between m-subsets and (m-s)-subsets of an (m+q)-set has
an explicit left inverse whose entries only depend on the size of a set
difference. Same for the transposed system and its right inverse.
"""

from wedgemaps.systems import SystemParams, coeffs, inj_system, left_inverse, right_inverse, surj_system

params = SystemParams(m=3, p=2, s=1)
print("q =", params.q)

A = inj_system(params)
B = left_inverse(params)
print("A", A.shape, "B", B.shape)
print("B @ A is identity:", (B @ A).is_identity())

As = surj_system(params)
Bs = right_inverse(params)
print("A' @ B' is identity:", (As @ Bs).is_identity())

##############################################################################
# The coefficients C_i, indexed by |S \ R|.

for q, s in [(1, 1), (2, 1), (3, 2)]:
    print(q, s, coeffs(q, s))

##############################################################################
# With an alternating sign on C_i the identity breaks once m - s >= 2.

alt = coeffs(params.q, params.s, variant="alternating")
print("alternating variant:", (left_inverse(params, alt) @ A).is_identity())
