"""
Gram matrices of finite Gabor systems
=====================================

The smallest Gram eigenvalue separates independent systems from
dependent ones, here 2 + cos on six points.
"""

import numpy as np

from tfrunner.gabor import PointSet, independence_score
from tfrunner.models import Gaussian, TwoPlusCos

pts = PointSet([(0, 0), (0, -1), (0, 1), (0.3, 0), (0.3, -1), (0.3, 1)])
s = independence_score(TwoPlusCos(), pts)
print(f"2+cos: lambda_min / trace = {s.relative:.2e}, residual {s.residual:.2e}")
print("null vector:", np.round(s.null_vector, 4))

# the Gaussian on four scattered points stays well conditioned
g = independence_score(Gaussian(), PointSet([(0, 0), (0.5, 1), (-1, 0.3), (1.2, -0.7)]))
print(f"Gaussian: lambda_min / trace = {g.relative:.2e}")
