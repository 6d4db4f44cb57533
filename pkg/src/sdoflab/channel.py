"""Fading-channel sampling and block stacking.

Model: two transmitters and a legitimate receiver with N antennas each,
an eavesdropper with K antennas.  Per slot t the legitimate receiver
sees H1(t)X1(t) + H2(t)X2(t) + noise and the eavesdropper sees
G1(t)X1(t) + G2(t)X2(t) + noise.  Channel entries are drawn i.i.d.
uniform from the symmetric rational grid { j/D : -D <= j <= D, j != 0 },
which stands in for "any continuous distribution with bounded support":
generic-position statements then become exact rank equalities, and the
probability-zero degeneracies of the continuous model become rare grid
collisions removed by rejection sampling.

The transmitters know the legitimate matrices H_i only.  Operations that
build precoders therefore receive a :class:`LegitimateCsit` view; the
eavesdropper matrices G_i exist only on the evaluation side.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import DimensionMismatch, MalformedFile, ResampleLimitExceeded
from .ratmat import RationalMatrix, block_diag, matrix_from_strings

DEFAULT_GRID_DENOM = 10_000
RESAMPLE_LIMIT = 100


@dataclass(frozen=True)
class SystemDims:
    """Antenna counts and blocklength: N per legitimate terminal, K at
    the eavesdropper, n channel uses."""

    n_antennas: int
    k_eve: int
    n_slots: int

    def __post_init__(self):
        if self.n_antennas < 1:
            raise ValueError("n_antennas must be >= 1")
        if self.k_eve < 0:
            raise ValueError("k_eve must be >= 0")
        if self.n_slots < 1:
            raise ValueError("n_slots must be >= 1")


@dataclass(frozen=True)
class LegitimateCsit:
    """The channel knowledge available to the transmitters: per-slot
    legitimate-link matrices only, never the eavesdropper links."""

    dims: SystemDims
    h1: tuple[RationalMatrix, ...]
    h2: tuple[RationalMatrix, ...]


@dataclass(frozen=True)
class ChannelRealization:
    """Per-slot channel draw: h1, h2 are N x N (invertible), g1, g2 are K x N."""

    dims: SystemDims
    h1: tuple[RationalMatrix, ...]
    h2: tuple[RationalMatrix, ...]
    g1: tuple[RationalMatrix, ...]
    g2: tuple[RationalMatrix, ...]

    @property
    def legitimate(self) -> LegitimateCsit:
        """No-eavesdropper-CSIT view handed to precoder constructors."""
        return LegitimateCsit(self.dims, self.h1, self.h2)


@dataclass(frozen=True)
class StackedChannel:
    """Block-diagonal channel over n slots: barH_i is Nn x Nn, barG_i is Kn x Nn."""

    dims: SystemDims
    barH1: RationalMatrix
    barH2: RationalMatrix
    barG1: RationalMatrix
    barG2: RationalMatrix


def grid_matrix(rng: np.random.Generator, rows: int, cols: int, denom: int) -> RationalMatrix:
    """Matrix with entries i.i.d. uniform on { j/denom : j in [-denom, denom], j != 0 }."""
    draws = rng.integers(0, 2 * denom, size=rows * cols)
    it = iter(draws)
    data = []
    for _ in range(rows):
        row = []
        for _ in range(cols):
            v = int(next(it))
            j = v - denom if v < denom else v - denom + 1
            row.append(Fraction(j, denom))
        data.append(row)
    return RationalMatrix(data, cols=cols)


def sample_full_rank(
    rng: np.random.Generator, rows: int, cols: int, denom: int
) -> RationalMatrix:
    """Grid matrix resampled until its rank is min(rows, cols)."""
    target = min(rows, cols)
    for _ in range(RESAMPLE_LIMIT):
        m = grid_matrix(rng, rows, cols, denom)
        if target == 0 or m.rank() == target:
            return m
    raise ResampleLimitExceeded(
        f"no rank-{target} sample in {RESAMPLE_LIMIT} draws ({rows}x{cols}, D={denom})"
    )


def sample_realization(
    dims: SystemDims, seed: int, denom: int = DEFAULT_GRID_DENOM
) -> ChannelRealization:
    """Draw a realization; deterministic given (dims, seed, denom).

    Per-slot legitimate matrices are resampled until invertible and
    eavesdropper matrices until full rank min(K, N), so that stacking
    yields barH_i of rank Nn and barG_i of rank min(Kn, Nn) exactly.
    """
    rng = np.random.default_rng(seed)
    N, K, n = dims.n_antennas, dims.k_eve, dims.n_slots
    h1 = tuple(sample_full_rank(rng, N, N, denom) for _ in range(n))
    h2 = tuple(sample_full_rank(rng, N, N, denom) for _ in range(n))
    g1 = tuple(sample_full_rank(rng, K, N, denom) for _ in range(n))
    g2 = tuple(sample_full_rank(rng, K, N, denom) for _ in range(n))
    return ChannelRealization(dims, h1, h2, g1, g2)


def stack(r: ChannelRealization) -> StackedChannel:
    """Assemble the block-diagonal channel matrices over all slots.

    With K = 0 the eavesdropper blocks are 0 x Nn matrices: an absent
    eavesdropper simply observes an empty vector.
    """
    return StackedChannel(
        r.dims,
        barH1=block_diag(list(r.h1)),
        barH2=block_diag(list(r.h2)),
        barG1=block_diag(list(r.g1)),
        barG2=block_diag(list(r.g2)),
    )


# -- save / load ---------------------------------------------------------------


def _slots_to_json(mats: tuple[RationalMatrix, ...]) -> list:
    return [m.to_strings() for m in mats]


def realization_to_dict(r: ChannelRealization) -> dict:
    return {
        "dims": {
            "n_antennas": r.dims.n_antennas,
            "k_eve": r.dims.k_eve,
            "n_slots": r.dims.n_slots,
        },
        "h1": _slots_to_json(r.h1),
        "h2": _slots_to_json(r.h2),
        "g1": _slots_to_json(r.g1),
        "g2": _slots_to_json(r.g2),
    }


def save_realization(r: ChannelRealization, path) -> None:
    Path(path).write_text(
        json.dumps(realization_to_dict(r), indent=2, sort_keys=True) + "\n"
    )


def _slot_matrices(obj, rows: int, cols: int, field: str) -> tuple[RationalMatrix, ...]:
    if not isinstance(obj, list):
        raise MalformedFile(f"{field}: expected a list of per-slot matrices")
    out = []
    for t, mat in enumerate(obj):
        try:
            m = matrix_from_strings(mat, cols=cols)
        except (ValueError, TypeError, DimensionMismatch) as exc:
            raise MalformedFile(f"{field}[{t}]: {exc}") from exc
        if m.shape != (rows, cols):
            raise MalformedFile(
                f"{field}[{t}]: expected {rows}x{cols}, got {m.rows}x{m.cols}"
            )
        out.append(m)
    return tuple(out)


def realization_from_dict(doc: dict) -> ChannelRealization:
    try:
        d = doc["dims"]
        dims = SystemDims(int(d["n_antennas"]), int(d["k_eve"]), int(d["n_slots"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedFile(f"dims: {exc}") from exc
    N, K, n = dims.n_antennas, dims.k_eve, dims.n_slots
    fields = {}
    for name, rows in (("h1", N), ("h2", N), ("g1", K), ("g2", K)):
        if name not in doc:
            raise MalformedFile(f"{name}: missing")
        mats = _slot_matrices(doc[name], rows, N, name)
        if len(mats) != n:
            raise MalformedFile(f"{name}: expected {n} slots, got {len(mats)}")
        fields[name] = mats
    return ChannelRealization(dims, **fields)


def load_realization(path) -> ChannelRealization:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise MalformedFile(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MalformedFile("top level: expected an object")
    return realization_from_dict(doc)
