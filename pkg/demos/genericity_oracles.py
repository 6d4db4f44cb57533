#!/usr/bin/env python3
"""Monte Carlo spot checks of the "almost surely" rank facts.

Three generic-position properties carry the whole framework:

  1. product rank: for fixed rank-p_i precoders and random K x N
     matrices G_i, rank([G1 P1, G2 P2]) = min(p1 + p2, K);
  2. least alignment: precoders built from the legitimate links alone
     can never make the eavesdropper's span smaller than the receiver's
     (equal antenna counts);
  3. full space: whenever the helper scheme achieves positive secure
     rate, its noise fills all Kn eavesdropper dimensions.

Sampling from the exact rational grid turns each trial into a yes/no
rank identity; counterexamples would be stored with their seeds.
"""

from sdoflab import full_space_trial, least_alignment_trial, rank_lemma_trial

TRIALS = 400

print(f"1. product-rank oracle ({TRIALS} trials per cell)")
for N, K, p1, p2 in ((2, 2, 1, 1), (3, 1, 2, 2), (4, 3, 2, 0), (2, 4, 2, 2)):
    s = rank_lemma_trial(N, K, p1, p2, trials=TRIALS, seed=1)
    expected = min(p1 + p2, K)
    print(f"   N={N} K={K} p=({p1},{p2}): rank always {expected}?  {s.successes}/{s.trials} -> {'OK' if s.ok else 'COUNTEREXAMPLE'}")

print(f"\n2. least-alignment oracle ({TRIALS} trials, K = N)")
for N in (1, 2, 3):
    s = least_alignment_trial(N, n=2, trials=TRIALS, seed=2)
    print(f"   N=K={N}: eavesdropper span >= receiver span on {s.successes}/{s.trials} -> {'OK' if s.ok else 'COUNTEREXAMPLE'}")

print(f"\n3. full-space oracle ({TRIALS} trials)")
for N, K in ((2, 1), (2, 2), (3, 2)):
    s = full_space_trial(N, K, trials=TRIALS, seed=3)
    print(f"   N={N} K={K}: noise fills all {2 * K} eavesdropper dims on {s.successes}/{s.trials} -> {'OK' if s.ok else 'COUNTEREXAMPLE'}")

print("\nEvery trial is replayable from (parameters, seed).")
