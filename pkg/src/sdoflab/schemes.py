"""Linear precoding schemes and the two-slot alignment construction.

A linear scheme sends, per transmitter i, m_i information symbols v_i
and n_i artificial-noise symbols u_i through stacked precoders
barP_i (Nn x m_i) and barQ_i (Nn x n_i).  The helper construction works
over n = 2 slots: both transmitters steer their noise through
barQ_i = barH_i^{-1} barQ for a common full-column-rank 2N x K matrix
barQ, so the two jamming signals collapse onto the same K-dimensional
subspace at the legitimate receiver while - having been chosen without
any knowledge of the eavesdropper links - they span the full 2K
eavesdropper dimensions almost surely.  The information precoder barP1
is drawn so that [barH1 barP1, barQ] has full rank 2N, which delivers
2N - K cleanly separable symbols per two slots.

Precoder construction never sees the eavesdropper matrices; it accepts
any object carrying ``dims``/``h1``/``h2`` (a :class:`ChannelRealization`
or its ``legitimate`` view).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .channel import (
    DEFAULT_GRID_DENOM,
    RESAMPLE_LIMIT,
    ChannelRealization,
    SystemDims,
    grid_matrix,
    sample_full_rank,
)
from .errors import DimensionMismatch, InvalidRegime, MalformedFile, ResampleLimitExceeded
from .ratmat import RationalMatrix, block_diag, hconcat, matrix_from_strings


@dataclass(frozen=True)
class LinearScheme:
    """Symbol counts and stacked precoders of a blocklength-n linear scheme."""

    dims: SystemDims
    m1: int
    m2: int
    n1: int
    n2: int
    barP1: RationalMatrix
    barP2: RationalMatrix
    barQ1: RationalMatrix
    barQ2: RationalMatrix

    def __post_init__(self):
        nn = self.dims.n_antennas * self.dims.n_slots
        for name, mat, count in (
            ("barP1", self.barP1, self.m1),
            ("barP2", self.barP2, self.m2),
            ("barQ1", self.barQ1, self.n1),
            ("barQ2", self.barQ2, self.n2),
        ):
            if mat.rows != nn:
                raise ValueError(f"{name}: expected {nn} rows, got {mat.rows}")
            if mat.cols != count:
                raise ValueError(f"{name}: expected {count} columns, got {mat.cols}")


# Well-separated-directions floor for the float sigma_min guard below.  The
# exact rank checks remain the binding contract; this only steers away from
# the rare near-degenerate draws (sigma_min ~ 1e-3 and below) whose
# finite-power entropy saturates too slowly for slope fits to recover the
# rank by P = 1e10.  Best effort: if no draw within the attempt budget
# clears the floor (conceivable for an ill-conditioned channel, which the
# constructor cannot resample), the best-conditioned full-rank draw wins.
_CONDITION_FLOOR = 0.02


def _sigma_min(m: RationalMatrix) -> float:
    return float(np.linalg.svd(m.to_float_array(), compute_uv=False)[-1])


def construct_wth_scheme(
    chan,
    seed: int,
    denom: int = DEFAULT_GRID_DENOM,
    info_transmitter: int = 1,
) -> LinearScheme:
    """Build the two-slot helper scheme from legitimate-link CSIT only.

    Parameters
    ----------
    chan : ChannelRealization or LegitimateCsit
        Only ``dims``, ``h1`` and ``h2`` are read.
    seed : int
        Precoder sampling seed.
    info_transmitter : int
        Which transmitter carries the information symbols (the other one
        is the pure jammer).  Role 2 is what MAC time sharing uses.

    Returns
    -------
    LinearScheme
        With m = 2N - K information symbols at the chosen transmitter and
        K noise symbols at each transmitter; rank([barH barP, barQ]) = 2N
        is enforced by rejection, so decodability is exact by
        construction.

    Raises
    ------
    InvalidRegime
        If K > 2N (no information symbol fits) or n_slots != 2.
    """
    dims: SystemDims = chan.dims
    N, K, n = dims.n_antennas, dims.k_eve, dims.n_slots
    if n != 2:
        raise InvalidRegime(f"the construction is defined over 2 slots, got n={n}")
    if K > 2 * N:
        raise InvalidRegime(f"K={K} exceeds 2N={2 * N}")
    if info_transmitter not in (1, 2):
        raise ValueError("info_transmitter must be 1 or 2")

    rng = np.random.default_rng(seed)
    barH1 = block_diag(list(chan.h1))
    barH2 = block_diag(list(chan.h2))
    inv1, inv2 = barH1.inverse(), barH2.inverse()
    nn = 2 * N
    m = 2 * N - K

    barH_info = barH1 if info_transmitter == 1 else barH2
    best = None
    best_sigma = -1.0
    for _ in range(RESAMPLE_LIMIT):
        cand_q = sample_full_rank(rng, nn, K, denom)
        cand_p = grid_matrix(rng, nn, m, denom)
        received = hconcat([barH_info @ cand_p, cand_q])
        if received.rank() != nn:
            continue
        sigma = _sigma_min(received)
        if sigma > best_sigma:
            best, best_sigma = (cand_p, cand_q), sigma
        if sigma >= _CONDITION_FLOOR:
            break
    if best is None:
        raise ResampleLimitExceeded(
            f"no precoders with rank([H P, Q]) = {nn} in {RESAMPLE_LIMIT} draws"
        )
    barP, barQ = best
    barQ1, barQ2 = inv1 @ barQ, inv2 @ barQ

    empty = RationalMatrix([[]] * nn, cols=0)
    if info_transmitter == 1:
        return LinearScheme(dims, m, 0, K, K, barP, empty, barQ1, barQ2)
    return LinearScheme(dims, 0, m, K, K, empty, barP, barQ1, barQ2)


def compose_mac_timeshare(
    rA, rB, seed: int, denom: int = DEFAULT_GRID_DENOM
) -> tuple[LinearScheme, LinearScheme]:
    """Two role-swapped helper schemes realizing equal-rate time sharing.

    The first scheme sends transmitter 1's symbols over ``rA`` with
    transmitter 2 jamming; the second swaps the roles over ``rB``.
    Concatenating the two 2-slot blocks yields the secure-rate pair
    (d1, d2) = ((2N-K)/4, (2N-K)/4), i.e. sum (2N-K)/2.
    """
    if rA.dims != rB.dims:
        raise ValueError(f"dims differ: {rA.dims} vs {rB.dims}")
    ss = np.random.SeedSequence((seed, 0)), np.random.SeedSequence((seed, 1))
    seedA, seedB = (int(s.generate_state(1, dtype=np.uint64)[0]) for s in ss)
    first = construct_wth_scheme(rA, seedA, denom=denom, info_transmitter=1)
    second = construct_wth_scheme(rB, seedB, denom=denom, info_transmitter=2)
    return first, second


# -- save / load ---------------------------------------------------------------


def scheme_to_dict(s: LinearScheme) -> dict:
    return {
        "dims": {
            "n_antennas": s.dims.n_antennas,
            "k_eve": s.dims.k_eve,
            "n_slots": s.dims.n_slots,
        },
        "m1": s.m1,
        "m2": s.m2,
        "n1": s.n1,
        "n2": s.n2,
        "barP1": s.barP1.to_strings(),
        "barP2": s.barP2.to_strings(),
        "barQ1": s.barQ1.to_strings(),
        "barQ2": s.barQ2.to_strings(),
    }


def save_scheme(s: LinearScheme, path) -> None:
    Path(path).write_text(json.dumps(scheme_to_dict(s), indent=2, sort_keys=True) + "\n")


def scheme_from_dict(doc: dict) -> LinearScheme:
    try:
        d = doc["dims"]
        dims = SystemDims(int(d["n_antennas"]), int(d["k_eve"]), int(d["n_slots"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedFile(f"dims: {exc}") from exc
    counts = {}
    for name in ("m1", "m2", "n1", "n2"):
        if name not in doc or not isinstance(doc[name], int) or doc[name] < 0:
            raise MalformedFile(f"{name}: expected a nonnegative integer")
        counts[name] = doc[name]
    nn = dims.n_antennas * dims.n_slots
    mats = {}
    for name, count in (
        ("barP1", counts["m1"]),
        ("barP2", counts["m2"]),
        ("barQ1", counts["n1"]),
        ("barQ2", counts["n2"]),
    ):
        if name not in doc:
            raise MalformedFile(f"{name}: missing")
        try:
            m = matrix_from_strings(doc[name], cols=count)
        except (ValueError, TypeError, DimensionMismatch) as exc:
            raise MalformedFile(f"{name}: {exc}") from exc
        if m.shape != (nn, count):
            raise MalformedFile(
                f"{name}: expected {nn}x{count}, got {m.rows}x{m.cols}"
            )
        mats[name] = m
    return LinearScheme(dims, counts["m1"], counts["m2"], counts["n1"], counts["n2"],
                        mats["barP1"], mats["barP2"], mats["barQ1"], mats["barQ2"])


def load_scheme(path) -> LinearScheme:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise MalformedFile(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MalformedFile("top level: expected an object")
    return scheme_from_dict(doc)
