"""Tour of the four weighted means and the five-term chains around them.

Run:  python3 demos/01_weighted_means.py
"""

import numpy as np

from meanbounds import (
    identric_chain,
    logarithmic_chain,
    weighted_arithmetic,
    weighted_geometric,
    weighted_identric,
    weighted_logarithmic,
)

a, b, v = 1.0, 2.0, 0.25

print("== the four means at (a, b, v) =", (a, b, v), "==")
for name, fn in (
    ("arithmetic ", weighted_arithmetic),
    ("geometric  ", weighted_geometric),
    ("logarithmic", weighted_logarithmic),
    ("identric   ", weighted_identric),
):
    print(f"  {name}  {fn(a, b, v):.12f}")

# The logarithmic mean sits inside a five-term chain: the two inner terms
# squeeze it between the geometric and arithmetic means.
print("\n== chain around the logarithmic mean ==")
rep = logarithmic_chain(a, b, v)
for label, value in zip(rep.labels, rep.values):
    print(f"  {label:<22} {value:.12f}")
print("  slacks:", ["%.3e" % s for s in rep.slacks], "pass:", rep.passed)

print("\n== chain around the identric mean ==")
rep = identric_chain(1.0, 4.0, 0.5)
for label, value in zip(rep.labels, rep.values):
    print(f"  {label:<22} {value:.12f}")
print("  slacks:", ["%.3e" % s for s in rep.slacks], "pass:", rep.passed)

# Both means are symmetric under (a, b, v) -> (b, a, 1-v) and homogeneous.
print("\n== symmetry and homogeneity spot checks ==")
rng = np.random.default_rng(0)
worst_sym = worst_hom = 0.0
for _ in range(1000):
    x, y, c = np.exp(rng.uniform(np.log(1e-3), np.log(1e3), 3))
    w = rng.uniform(0.01, 0.99)
    m = weighted_logarithmic(x, y, w)
    worst_sym = max(worst_sym, abs(m - weighted_logarithmic(y, x, 1 - w)) / m)
    worst_hom = max(worst_hom, abs(weighted_logarithmic(c * x, c * y, w) - c * m) / (c * m))
print(f"  worst symmetry error    {worst_sym:.2e}")
print(f"  worst homogeneity error {worst_hom:.2e}")

# The weight endpoints recover the arguments themselves.
print("\n== weight endpoint limits ==")
print("  v=0:", weighted_logarithmic(2.0, 5.0, 0.0), " v=1:", weighted_logarithmic(2.0, 5.0, 1.0))
print("  v=1e-8 stays close to a:", weighted_logarithmic(2.0, 5.0, 1e-8))
