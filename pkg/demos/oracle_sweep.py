"""
Sweep against exact rank
========================

Run the full check over N <= 6, l <= 3, s <= 3 and look at the one map that
disagrees with a published claim.
"""

from wedgemaps.verify import sweep
from wedgemaps.wedge import MapSpec

report = sweep(6, 3, 3, invariance_trials=1)
print(report.summary())

(rec,) = [r for r in report.records if r.spec == MapSpec(4, 1, 2, 1, 1)]
print(rec.spec, "dims", (rec.dom_dim, rec.cod_dim), "rank", rec.rank)
print("flag:", rec.flag, "| claim", rec.claim, "holds:", rec.claim_holds)
# rank equals the codomain dimension, so this map is onto
