"""Closed-form sum s.d.o.f. values and comparison curves.

All values are exact rationals.  For the helper/MAC models with no
eavesdropper CSIT the optimal linear sum s.d.o.f. is max((2N-K)/2, 0);
without the linearity restriction the best known upper bound in the
middle regime N <= K <= 2N is min(N/2, 2N(2N-K)/(4N-K)).  The
comparison columns carry the full-eavesdropper-CSIT values and the
arbitrarily-varying-eavesdropper value max(N-K, 0); each comparison is
emitted only in the regime its source states it for and is absent
elsewhere rather than extrapolated.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import UnsupportedFormat
from .ratmat import format_fraction

CURVE_CSV_HEADER = "N,K,linear_optimal,general_upper,fullcsit_macwt,fullcsit_wth,avc"


@dataclass(frozen=True)
class BoundPoint:
    n_antennas: int
    k_eve: int
    linear_optimal: Fraction
    general_upper: Fraction
    fullcsit_macwt: Fraction | None
    fullcsit_wth: Fraction | None
    avc_value: Fraction


def _validate(N: int, K: int) -> None:
    if N < 1:
        raise ValueError("N must be >= 1")
    if K < 0:
        raise ValueError("K must be >= 0")


def linear_sum_sdof(N: int, K: int) -> Fraction:
    """Optimal linear sum s.d.o.f.: max((2N-K)/2, 0)."""
    _validate(N, K)
    return max(Fraction(2 * N - K, 2), Fraction(0))


def general_upper_sdof(N: int, K: int) -> Fraction:
    """Best upper bound without linearity restrictions.

    (2N-K)/2 is tight for K <= N; min(N/2, 2N(2N-K)/(4N-K)) holds for
    N <= K <= 2N; zero beyond K = 2N.
    """
    _validate(N, K)
    if K <= N:
        return Fraction(2 * N - K, 2)
    if K <= 2 * N:
        return min(Fraction(N, 2), Fraction(2 * N * (2 * N - K), 4 * N - K))
    return Fraction(0)


def comparison_curves(N: int, K: int) -> BoundPoint:
    """Bound point with the comparison columns populated where stated.

    fullcsit_macwt = min(N, 2(2N-K)/3) for K <= N; fullcsit_wth =
    min(N/2, 2N-K) for 4N/3 <= K <= 2N; avc = max(N-K, 0) everywhere.
    """
    _validate(N, K)
    fullcsit_macwt = None
    if K <= N:
        fullcsit_macwt = min(Fraction(N), Fraction(2 * (2 * N - K), 3))
    fullcsit_wth = None
    if 4 * N <= 3 * K and K <= 2 * N:
        fullcsit_wth = min(Fraction(N, 2), Fraction(2 * N - K))
    return BoundPoint(
        n_antennas=N,
        k_eve=K,
        linear_optimal=linear_sum_sdof(N, K),
        general_upper=general_upper_sdof(N, K),
        fullcsit_macwt=fullcsit_macwt,
        fullcsit_wth=fullcsit_wth,
        avc_value=max(Fraction(N - K), Fraction(0)),
    )


def curve_points(N: int, k_range: tuple[int, int]) -> list[BoundPoint]:
    lo, hi = k_range
    if lo < 0 or hi < lo:
        raise ValueError(f"bad K range {lo}:{hi}")
    return [comparison_curves(N, K) for K in range(lo, hi + 1)]


def _opt(x: Fraction | None) -> str:
    return "" if x is None else format_fraction(x)


def emit_curve(N: int, k_range: tuple[int, int], fmt: str = "csv") -> str:
    """Render the curve as text: ``csv``, ``json`` or ``gnuplot``.

    The gnuplot layout is whitespace-separated with a comment header and
    ``?`` for absent values, ready for ``plot "file" using 2:3``.
    """
    points = curve_points(N, k_range)
    if fmt == "csv":
        buf = io.StringIO()
        buf.write(CURVE_CSV_HEADER + "\r\n")
        for p in points:
            buf.write(
                ",".join(
                    (
                        str(p.n_antennas),
                        str(p.k_eve),
                        format_fraction(p.linear_optimal),
                        format_fraction(p.general_upper),
                        _opt(p.fullcsit_macwt),
                        _opt(p.fullcsit_wth),
                        format_fraction(p.avc_value),
                    )
                )
                + "\r\n"
            )
        return buf.getvalue()
    if fmt == "json":
        rows = [
            {
                "N": p.n_antennas,
                "K": p.k_eve,
                "linear_optimal": format_fraction(p.linear_optimal),
                "general_upper": format_fraction(p.general_upper),
                "fullcsit_macwt": None if p.fullcsit_macwt is None else format_fraction(p.fullcsit_macwt),
                "fullcsit_wth": None if p.fullcsit_wth is None else format_fraction(p.fullcsit_wth),
                "avc": format_fraction(p.avc_value),
            }
            for p in points
        ]
        return json.dumps(rows, indent=2, sort_keys=True) + "\n"
    if fmt == "gnuplot":
        lines = ["# " + CURVE_CSV_HEADER.replace(",", " ")]
        for p in points:
            cells = [
                str(p.n_antennas),
                str(p.k_eve),
                str(float(p.linear_optimal)),
                str(float(p.general_upper)),
                "?" if p.fullcsit_macwt is None else str(float(p.fullcsit_macwt)),
                "?" if p.fullcsit_wth is None else str(float(p.fullcsit_wth)),
                str(float(p.avc_value)),
            ]
            lines.append(" ".join(cells))
        return "\n".join(lines) + "\n"
    raise UnsupportedFormat(f"unknown curve format: {fmt!r}")
