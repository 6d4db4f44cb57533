"""Exact rank-based decodability and security checks for linear schemes.

Decodability asks whether the information symbols occupy their own
m1 + m2 dimensions at the legitimate receiver once the jamming subspace
is projected out; security counts the leakage dimensions L(n), i.e. how
far the eavesdropper's received span grows beyond what the artificial
noise alone already covers.  Both are rank differences, evaluated
exactly.  At blocklength 2 the security flag requires L = 0 outright:
the helper construction attains it, and any nonzero desk-scale threshold
would be arbitrary (the randomized search in :mod:`sdoflab.oracles`
explores relaxed leakage budgets separately).

Verification consumes the eavesdropper matrices - it evaluates outcomes
- while construction never does; the asymmetry mirrors the no-
eavesdropper-CSIT assumption.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .channel import StackedChannel
from .errors import DimensionMismatch
from .ratmat import RationalMatrix, format_fraction, hconcat
from .schemes import LinearScheme

REPORT_CSV_HEADER = "N,K,n,m1,m2,n1,n2,decodable_dims,leakage_dims,eve_rank,sdof,ok"


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of the exact checks for one (scheme, realization) pair."""

    n_antennas: int
    k_eve: int
    n_slots: int
    m1: int
    m2: int
    n1: int
    n2: int
    decodable_dims: int
    leakage_dims: int
    decodability_ok: bool
    security_ok: bool
    eve_space_rank: int
    achieved_sum_sdof: Fraction | None

    def to_dict(self) -> dict:
        d = {
            "n_antennas": self.n_antennas,
            "k_eve": self.k_eve,
            "n_slots": self.n_slots,
            "m1": self.m1,
            "m2": self.m2,
            "n1": self.n1,
            "n2": self.n2,
            "decodable_dims": self.decodable_dims,
            "leakage_dims": self.leakage_dims,
            "decodability_ok": self.decodability_ok,
            "security_ok": self.security_ok,
            "eve_space_rank": self.eve_space_rank,
            "achieved_sum_sdof": None
            if self.achieved_sum_sdof is None
            else format_fraction(self.achieved_sum_sdof),
        }
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv_row(self) -> str:
        sdof = "" if self.achieved_sum_sdof is None else format_fraction(self.achieved_sum_sdof)
        ok = "true" if (self.decodability_ok and self.security_ok) else "false"
        return ",".join(
            str(x)
            for x in (
                self.n_antennas, self.k_eve, self.n_slots,
                self.m1, self.m2, self.n1, self.n2,
                self.decodable_dims, self.leakage_dims, self.eve_space_rank,
                sdof, ok,
            )
        )


def _check_dims(s: LinearScheme, c: StackedChannel) -> None:
    if s.dims != c.dims:
        raise DimensionMismatch(f"scheme dims {s.dims} != channel dims {c.dims}")


def _received(
    s: LinearScheme, left: RationalMatrix, right: RationalMatrix
) -> tuple[RationalMatrix, RationalMatrix]:
    """Information and noise column blocks as seen through (left, right)."""
    info = hconcat([left @ s.barP1, right @ s.barP2])
    noise = hconcat([left @ s.barQ1, right @ s.barQ2])
    return info, noise


def decodable_dimensions(s: LinearScheme, c: StackedChannel) -> int:
    """rank([H1P1, H2P2, H1Q1, H2Q2]) - rank([H1Q1, H2Q2])."""
    _check_dims(s, c)
    info, noise = _received(s, c.barH1, c.barH2)
    return hconcat([info, noise]).rank() - noise.rank()


def leakage_dimensions(s: LinearScheme, c: StackedChannel) -> int:
    """L(n) = rank([G1P1, G2P2, G1Q1, G2Q2]) - rank([G1Q1, G2Q2])."""
    _check_dims(s, c)
    info, noise = _received(s, c.barG1, c.barG2)
    return hconcat([info, noise]).rank() - noise.rank()


def verify(s: LinearScheme, c: StackedChannel) -> VerificationReport:
    """Run both checks and report the achieved sum rate when they pass."""
    _check_dims(s, c)
    info_h, noise_h = _received(s, c.barH1, c.barH2)
    dec = hconcat([info_h, noise_h]).rank() - noise_h.rank()
    info_g, noise_g = _received(s, c.barG1, c.barG2)
    eve_rank = noise_g.rank()
    leak = hconcat([info_g, noise_g]).rank() - eve_rank

    dec_ok = dec == s.m1 + s.m2
    sec_ok = leak == 0
    sdof = Fraction(s.m1 + s.m2, s.dims.n_slots) if (dec_ok and sec_ok) else None
    return VerificationReport(
        n_antennas=s.dims.n_antennas,
        k_eve=s.dims.k_eve,
        n_slots=s.dims.n_slots,
        m1=s.m1,
        m2=s.m2,
        n1=s.n1,
        n2=s.n2,
        decodable_dims=dec,
        leakage_dims=leak,
        decodability_ok=dec_ok,
        security_ok=sec_ok,
        eve_space_rank=eve_rank,
        achieved_sum_sdof=sdof,
    )


def full_space_ratio(s: LinearScheme, c: StackedChannel) -> Fraction:
    """Fraction of the eavesdropper's Kn dimensions filled by noise alone."""
    _check_dims(s, c)
    K, n = s.dims.k_eve, s.dims.n_slots
    if K < 1:
        raise ValueError("full_space_ratio needs an eavesdropper (K >= 1)")
    _, noise = _received(s, c.barG1, c.barG2)
    return Fraction(noise.rank(), K * n)
