"""
Soft thresholding on the l1 ball, step by step
==============================================

Walks one vector through both implementations of the sparsifying map,
checks they agree to the bit, and compares the observed l2 error against
the closed-form worst case.
"""

import numpy as np

from widim.core import make_exponents
from widim.signed_perm import act, canonicalize, random_element
from widim.threshold_map import (
    distortion,
    distortion_bound,
    extremal_vector,
    f0,
    f_closed,
    f_equivariant,
)

x = np.array([-3.0, 1.0, 2.0])
m = 1

# route one: move to the sorted nonnegative cone, apply the cone map, move back
g, y = canonicalize(x)
print("canonical form  ", y.coords)
print("cone map output ", f0(y, m).coords)
print("equivariant route", f_equivariant(x, m))

# route two: one closed-form expression, sign(x) * max(|x| - tau, 0)
print("closed-form route", f_closed(x, m))

assert np.array_equal(f_equivariant(x, m), f_closed(x, m))

# the error of keeping only m coordinates, measured in l2
e = make_exponents(p=1, q=2)
print("observed distortion", distortion(x, m, e.q))
print("worst-case bound   ", distortion_bound(m, e))

# the bound is tight: a flat spike with m+1 equal coordinates attains it
spike = extremal_vector(m, e.p, n=3)
print("extremal vector    ", spike)
print("extremal distortion", distortion(spike, m, e.q))

# seeded random loop: both routes agree bitwise on messy inputs
rng = np.random.default_rng(7)
for trial in range(2000):
    n = int(rng.integers(1, 9))
    v = np.round(rng.normal(size=n), 1)  # rounding forces ties
    k = int(rng.integers(0, n + 2))
    a, b = f_equivariant(v, k), f_closed(v, k)
    assert np.array_equal(a.view(np.uint64), b.view(np.uint64))
    ga = act(random_element(n, rng), v)
    assert distortion(ga, k, 2.0) <= distortion_bound(k, e) * np.linalg.norm(ga, 1) + 1e-9
print("2000 random trials: routes identical, bound scales with the l1 norm")
