#!/usr/bin/env python3
"""Sum s.d.o.f. versus eavesdropper antennas: the closed-form curves.

For N = 4 this prints, per K:
  * the optimal linear sum s.d.o.f. max((2N-K)/2, 0), achieved by the
    two-slot helper scheme;
  * the best known upper bound without the linearity restriction, which
    splits from the linear value inside N < K < 2N;
  * the full-eavesdropper-CSIT comparison values, in the regimes they
    are known for;
  * the arbitrarily-varying-eavesdropper value max(N-K, 0), strictly
    smaller whenever 0 < K < 2N: knowing merely the *distribution* of
    the eavesdropper channel buys real secrecy rate.
"""

from sdoflab import emit_curve
from sdoflab.bounds import curve_points

N = 4

print(emit_curve(N, (0, 2 * N), "csv").replace("\r\n", "\n"))

print("Highlights:")
for p in curve_points(N, (0, 2 * N)):
    notes = []
    if p.general_upper > p.linear_optimal:
        notes.append("upper bound exceeds best linear scheme")
    if 0 < p.k_eve < 2 * N:
        notes.append(f"AVC value {p.avc_value} < {p.linear_optimal}")
    if notes:
        print(f"  K={p.k_eve}: " + "; ".join(notes))

print("\nGnuplot-ready layout (plot 'curve.dat' using 2:3 with lines):\n")
print(emit_curve(N, (0, 2 * N), "gnuplot"))
