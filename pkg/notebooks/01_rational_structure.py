"""
Exact rational structure of frequency sets
==========================================

Affine dimension over Q and integer relation lattices, computed exactly
over a basis of square roots.
"""

from tfrunner.rational import RealBasis, affine_dimension, float_relation_guess, relation_lattice

B = RealBasis.from_labels(["1", "sqrt2", "sqrt3"])
one, r2, r3 = B.unit("1"), B.unit("sqrt2"), B.unit("sqrt3")

# four frequencies spanning a 3-dimensional rational space
omegas = [one * 0, one, r2, r3]
print("affine dim of {0, 1, sqrt2, sqrt3}:", affine_dimension(omegas))

# 1 + sqrt2 drops the dimension by one
print("affine dim of {0, 1, sqrt2, 1+sqrt2}:", affine_dimension([one * 0, one, r2, one + r2]))

# the relation lattice of (1, sqrt2, 1+sqrt2) is generated by (1, 1, -1) up to sign
lat = relation_lattice([one, r2, one + r2])
print("relations:", lat.basis_vectors)

# with only floats available, LLL guesses a small relation
print("float guess:", float_relation_guess([1.0, 2 ** 0.5, 1 + 2 ** 0.5], height_bound=64))
