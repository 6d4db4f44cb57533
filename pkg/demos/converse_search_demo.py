#!/usr/bin/env python3
"""Trying (and failing) to beat the linear sum-rate ceiling.

The linear ceiling says: no linear scheme can deliver more than
ceil(n(2N-K)/2) decodable-and-leak-free symbols over n uses.  This demo
hammers randomized candidates against it - fully random precoders,
H-inverse-aligned jammers, and helper-style constructions with perturbed
symbol counts - and reports the best survivor.

The search is a falsification harness, not a proof: it samples from an
infinite scheme space.  Its value is that the best survivor *reaches*
the ceiling (the construction is tight) while thousands of attempts
never cross it.  Relaxing the leakage budget shows the trade explicitly:
tolerated leakage buys extra decodable symbols one for one.
"""

from sdoflab import converse_search

TRIALS = 3000

print(f"{TRIALS} randomized schemes per configuration, leakage budget 0:\n")
for N, K in ((1, 1), (2, 2), (2, 3), (1, 2)):
    res = converse_search(N, K, n=2, trials=TRIALS, seed=99)
    verdict = "ceiling intact" if res.ok else "COUNTEREXAMPLE FOUND"
    reached = " (and attained)" if res.best_found == res.threshold else ""
    print(f"  N={N} K={K}: best m1+m2 = {res.best_found} vs ceiling {res.threshold}{reached} -> {verdict}")

print("\nLeakage budget sweep at N=2, K=2:")
for budget in (0, 1, 2):
    res = converse_search(2, 2, n=2, trials=TRIALS, seed=99, leak_budget=budget)
    print(f"  budget {budget}: best m1+m2 = {res.best_found} (ceiling {res.threshold})")
