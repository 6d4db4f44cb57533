#!/usr/bin/env python3
"""The exact-rank / Gaussian-entropy bridge, numerically.

For a linear map A and Gaussian symbols of variance alpha*P in unit
noise, h(AX + N) grows like rank(A) * (1/2) ln P.  So a least-squares
slope of mutual information against (1/2) ln P should land exactly on
the integer dimension counts the rank verifier computes - and the
secrecy rate of the helper scheme should grow like (2N-K)/2 per use.
"""

import numpy as np

from sdoflab import (
    SystemDims,
    construct_wth_scheme,
    dof_slope,
    gaussian_entropy,
    leakage_mi,
    legitimate_mi,
    sample_realization,
    secrecy_rate_proxy,
    stack,
)
from sdoflab.channel import grid_matrix
from sdoflab.verifier import decodable_dimensions, leakage_dimensions

rng = np.random.default_rng(7)

print("Entropy slope of a random map recovers its exact rank:")
for r in (1, 2, 3):
    m = grid_matrix(rng, 5, r, 100) @ grid_matrix(rng, r, 4, 100)
    a = m.to_float_array()
    sweep = dof_slope(lambda p: gaussian_entropy(a, p))
    print(f"  exact rank {m.rank()} -> fitted slope {sweep.fitted_slope:+.4f} (residual {sweep.residual:.2e})")

print("\nHelper scheme at (N, K) = (2, 1):")
dims = SystemDims(2, 1, 2)
realization = sample_realization(dims, seed=11)
channel = stack(realization)
scheme = construct_wth_scheme(realization.legitimate, seed=12)

legit = dof_slope(lambda p: legitimate_mi(scheme, channel, p))
leak = dof_slope(lambda p: leakage_mi(scheme, channel, p))
print(f"  receiver MI slope     : {legit.fitted_slope:+.4f}  (exact rank count: {decodable_dimensions(scheme, channel)})")
print(f"  eavesdropper MI slope : {leak.fitted_slope:+.4f}  (exact leakage count: {leakage_dimensions(scheme, channel)})")
print(f"  secrecy rate per use  : {secrecy_rate_proxy(scheme, channel, 1e10):.4f}  (closed form: {(2 * 2 - 1) / 2})")

print("\nRaw sweep (nats):")
print("  P          receiver MI   eavesdropper MI")
for p, y, z in zip(legit.powers, legit.values, leak.values):
    print(f"  {p:<10.0e} {y:12.3f} {z:14.3f}")
print("\nThe eavesdropper's mutual information saturates; the receiver's keeps climbing.")
