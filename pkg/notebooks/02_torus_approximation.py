"""
Simultaneous approximation on the torus
=======================================

A target sequence is approximable by t * lambda exactly when it respects
every integer relation among the lambdas.
"""

from tfrunner.errors import BadSequence
from tfrunner.rational import RealBasis
from tfrunner.torus import ApproxTask, classify_sequence, kronecker_witness

B = RealBasis.from_labels(["1", "sqrt2"])
one, r2 = B.unit("1"), B.unit("sqrt2")
lambdas = (one, r2, one + r2)

# x3 = x1 + x2 is forced by the relation (1, 1, -1)
good = ApproxTask(lambdas, (0.1, 0.3, 0.4), 0.01)
print(classify_sequence(good).to_json())
w = kronecker_witness(good)
print(f"witness t = {w.t:.6f}, error {w.achieved_error:.2e}")

# break the relation by 0.1
bad = ApproxTask(lambdas, (0.1, 0.3, 0.5), 0.01)
verdict = classify_sequence(bad)
print(verdict.kind.value, "defect", verdict.defect, "relation", verdict.violating_relation)
try:
    kronecker_witness(bad)
except BadSequence:
    print("no witness can exist below epsilon = defect / sum|p|")
