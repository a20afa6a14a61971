"""
Classification tables
=====================

Print the injective / surjective pattern of W for N=4, s=1 at every
codimension, then compare the closed criterion against exact ranks.
"""

from wedgemaps.cli import render_table
from wedgemaps.classify import classify, iter_specs
from wedgemaps.oracle import rank
from wedgemaps.wedge import build_matrix

for l in range(4):
    print(f"l = {l}")
    print(render_table(4, 1, l, "ascii"))
    print()

# legend: >-> injective, ->> surjective, >->> both, --> neither

##############################################################################
# Check the criterion on every map with N <= 5.

bad = 0
for spec in iter_specs(5):
    d, c = spec.dims
    r = rank(build_matrix(spec)).rank
    pred = classify(spec)
    bad += (pred.injective, pred.surjective) != (r == d, r == c)
print("mismatches:", bad)
