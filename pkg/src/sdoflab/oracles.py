"""Monte Carlo oracles for the almost-sure rank claims, plus an
adversarial randomized search probing the linear sum-rate ceiling.

Every statement exercised here is an "almost surely" claim about generic
channel gains.  Sampling from the rational grid makes each trial an
exact yes/no rank check, so the expected counterexample count is zero
and any hit is stored with its seed for bit-exact replay.

The randomized search is a falsification harness, not a proof: the
linear converse quantifies over all schemes, of which a desk-scale run
can only sample.  It provides evidence; it cannot verify.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .channel import (
    DEFAULT_GRID_DENOM,
    ChannelRealization,
    SystemDims,
    grid_matrix,
    sample_full_rank,
    sample_realization,
    stack,
)
from .errors import InvalidRank
from .ratmat import RationalMatrix, block_diag, hconcat
from .schemes import LinearScheme, construct_wth_scheme
from .verifier import verify


def derive_seed(master_seed: int, index: int) -> int:
    """Per-trial seed stream: mixed from (master seed, trial index)."""
    ss = np.random.SeedSequence((master_seed, index))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True)
class TrialSummary:
    """Outcome of a batch of independent yes/no trials."""

    trials: int
    successes: int
    counterexamples: tuple[dict, ...]

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def __add__(self, other: "TrialSummary") -> "TrialSummary":
        # Trials are independent given derived seeds, so partial batches
        # (e.g. from parallel workers) merge by summation.
        return TrialSummary(
            self.trials + other.trials,
            self.successes + other.successes,
            self.counterexamples + other.counterexamples,
        )

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "successes": self.successes,
            "counterexamples": list(self.counterexamples),
        }


def _rank_product(rng, n_rows: int, n_cols: int, target_rank: int, denom: int) -> RationalMatrix:
    """Random n_rows x n_cols matrix of exact rank target_rank (as a
    product of two full-rank grid factors)."""
    if target_rank == 0:
        return RationalMatrix.zeros(n_rows, n_cols)
    left = sample_full_rank(rng, n_rows, target_rank, denom)
    right = sample_full_rank(rng, target_rank, n_cols, denom)
    return left @ right


def _masked_grid(rng, mask, fixed: RationalMatrix, denom: int) -> RationalMatrix:
    """Matrix equal to ``fixed`` except at mask positions, which are redrawn."""
    rows = []
    for i, row in enumerate(fixed.data):
        out = list(row)
        for j in range(fixed.cols):
            if mask[i][j]:
                v = int(rng.integers(0, 2 * denom))
                j_val = v - denom if v < denom else v - denom + 1
                out[j] = Fraction(j_val, denom)
        rows.append(out)
    return RationalMatrix(rows, cols=fixed.cols)


def _validate_mask(mask, K: int, N: int, name: str) -> None:
    if len(mask) != K or any(len(r) != N for r in mask):
        raise ValueError(f"{name}: mask must be {K}x{N}")
    if any(not any(row) for row in mask):
        raise ValueError(f"{name}: every row needs at least one random entry")
    if any(not any(mask[i][j] for i in range(K)) for j in range(N)):
        raise ValueError(f"{name}: every column needs at least one random entry")


def rank_lemma_trial(
    N: int,
    K: int,
    p1: int,
    p2: int,
    trials: int,
    seed: int,
    m1: int | None = None,
    m2: int | None = None,
    denom: int = DEFAULT_GRID_DENOM,
    mask1: Sequence[Sequence[bool]] | None = None,
    mask2: Sequence[Sequence[bool]] | None = None,
) -> TrialSummary:
    """Check rank([G1 P1, G2 P2]) = min(p1 + p2, K) over random draws.

    Per trial, P_i is an N x m_i matrix of exact rank p_i (a product of
    two full-rank grid factors, drawn independently of the G_i), and G_i
    is K x N.  By default every G_i entry is random - the strongest
    hypothesis; passing ``mask_i`` restricts randomness to the marked
    positions (every row and column must keep at least one) with the
    rest held at fixed grid values drawn once up front.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    m1 = N if m1 is None else m1
    m2 = N if m2 is None else m2
    for p, m, name in ((p1, m1, "p1"), (p2, m2, "p2")):
        if not 0 <= p <= min(N, m):
            raise InvalidRank(f"{name}={p} exceeds min(N={N}, m={m})")
    setup_rng = np.random.default_rng(derive_seed(seed, 0x5E7))
    fixed1 = fixed2 = None
    if mask1 is not None:
        _validate_mask(mask1, K, N, "mask1")
        fixed1 = grid_matrix(setup_rng, K, N, denom)
    if mask2 is not None:
        _validate_mask(mask2, K, N, "mask2")
        fixed2 = grid_matrix(setup_rng, K, N, denom)

    expected = min(p1 + p2, K)
    successes = 0
    counterexamples = []
    for t in range(trials):
        rng = np.random.default_rng(derive_seed(seed, t))
        P1 = _rank_product(rng, N, m1, p1, denom)
        P2 = _rank_product(rng, N, m2, p2, denom)
        G1 = grid_matrix(rng, K, N, denom) if mask1 is None else _masked_grid(rng, mask1, fixed1, denom)
        G2 = grid_matrix(rng, K, N, denom) if mask2 is None else _masked_grid(rng, mask2, fixed2, denom)
        observed = hconcat([G1 @ P1, G2 @ P2]).rank()
        if observed == expected:
            successes += 1
        else:
            counterexamples.append(
                {"trial": t, "seed": derive_seed(seed, t), "observed": observed, "expected": expected}
            )
    return TrialSummary(trials, successes, tuple(counterexamples))


def least_alignment_trial(
    N: int, n: int, trials: int, seed: int, denom: int = DEFAULT_GRID_DENOM
) -> TrialSummary:
    """Rank analog of the least-alignment property at equal antenna counts.

    With K = N and per-trial precoders A_i built from the legitimate
    links only (alignment through barH_i^{-1} allowed, eavesdropper
    links never seen), the received span at the receiver that provided
    no CSIT can not be smaller:

        rank([G1 A1, G2 A2]) >= rank([H1 A1, H2 A2]).

    Trials rotate through maximally aligned, independent random, and
    mixed generators.
    """
    dims = SystemDims(N, N, n)
    nn = N * n
    successes = 0
    counterexamples = []
    for t in range(trials):
        trial_seed = derive_seed(seed, t)
        rng = np.random.default_rng(trial_seed)
        r = sample_realization(dims, trial_seed, denom)
        c = stack(r)
        style = t % 3
        inv1 = c.barH1.inverse()
        inv2 = c.barH2.inverse()
        if style == 0:
            cols = int(rng.integers(1, nn + 1))
            common = sample_full_rank(rng, nn, cols, denom)
            a1, a2 = inv1 @ common, inv2 @ common
        elif style == 1:
            a1 = grid_matrix(rng, nn, int(rng.integers(1, nn + 1)), denom)
            a2 = grid_matrix(rng, nn, int(rng.integers(1, nn + 1)), denom)
        else:
            common = sample_full_rank(rng, nn, int(rng.integers(1, nn + 1)), denom)
            a1 = inv1 @ common
            a2 = grid_matrix(rng, nn, int(rng.integers(1, nn + 1)), denom)
        eve = hconcat([c.barG1 @ a1, c.barG2 @ a2]).rank()
        legit = hconcat([c.barH1 @ a1, c.barH2 @ a2]).rank()
        if eve >= legit:
            successes += 1
        else:
            counterexamples.append(
                {"trial": t, "seed": trial_seed, "observed": eve, "expected": legit}
            )
    return TrialSummary(trials, successes, tuple(counterexamples))


def full_space_trial(
    N: int, K: int, trials: int, seed: int, denom: int = DEFAULT_GRID_DENOM
) -> TrialSummary:
    """Whenever the constructed scheme achieves positive sum s.d.o.f.,
    its artificial noise must fill all Kn eavesdropper dimensions."""
    if K < 1:
        raise ValueError("K must be >= 1")
    dims = SystemDims(N, K, 2)
    successes = 0
    counterexamples = []
    for t in range(trials):
        trial_seed = derive_seed(seed, t)
        r = sample_realization(dims, trial_seed, denom)
        s = construct_wth_scheme(r.legitimate, derive_seed(trial_seed, 1), denom)
        report = verify(s, stack(r))
        positive = report.achieved_sum_sdof is not None and report.achieved_sum_sdof > 0
        if not positive or report.eve_space_rank == K * dims.n_slots:
            successes += 1
        else:
            counterexamples.append(
                {
                    "trial": t,
                    "seed": trial_seed,
                    "observed": report.eve_space_rank,
                    "expected": K * dims.n_slots,
                }
            )
    return TrialSummary(trials, successes, tuple(counterexamples))


@dataclass(frozen=True)
class SearchResult:
    """Best decodable-and-quiet scheme found by randomized search."""

    trials: int
    best_found: int
    threshold: int
    counterexamples: tuple[dict, ...]

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "best_found": self.best_found,
            "threshold": self.threshold,
            "counterexamples": [
                {k: v for k, v in ce.items() if k not in ("scheme", "realization")}
                for ce in self.counterexamples
            ],
        }


def _random_scheme(rng, r: ChannelRealization, style: int, denom: int) -> LinearScheme:
    """Candidate generator: fully random, H-inverse-aligned noise, or a
    helper-style construction with perturbed symbol counts."""
    dims = r.dims
    nn = dims.n_antennas * dims.n_slots
    counts = [int(x) for x in rng.integers(0, nn + 1, size=4)]
    m1, m2, n1, n2 = counts
    if style == 0:
        barQ1 = grid_matrix(rng, nn, n1, denom)
        barQ2 = grid_matrix(rng, nn, n2, denom)
    else:
        if style == 2:
            m2 = 0
        n1 = n2 = int(rng.integers(0, nn + 1))
        common = grid_matrix(rng, nn, n1, denom)
        barQ1 = block_diag(list(r.h1)).inverse() @ common
        barQ2 = block_diag(list(r.h2)).inverse() @ common
    barP1 = grid_matrix(rng, nn, m1, denom)
    barP2 = grid_matrix(rng, nn, m2, denom)
    return LinearScheme(dims, m1, m2, n1, n2, barP1, barP2, barQ1, barQ2)


def converse_search(
    N: int,
    K: int,
    n: int,
    trials: int,
    seed: int,
    leak_budget: int = 0,
    denom: int = DEFAULT_GRID_DENOM,
) -> SearchResult:
    """Hunt for decodable schemes with leakage at most ``leak_budget``
    whose symbol count beats ceil(n(2N-K)/2) + leak_budget.

    Returns the best m1 + m2 over passing candidates; any candidate
    above the threshold is recorded as a counterexample together with
    its scheme and realization for replay (expected never).
    """
    if leak_budget < 0:
        raise ValueError("leak_budget must be >= 0")
    dims = SystemDims(N, K, n)
    threshold = max(math.ceil(n * (2 * N - K) / 2), 0) + leak_budget
    best = 0
    counterexamples = []
    for t in range(trials):
        trial_seed = derive_seed(seed, t)
        rng = np.random.default_rng(trial_seed)
        r = sample_realization(dims, trial_seed, denom)
        s = _random_scheme(rng, r, t % 3, denom)
        if s.m1 + s.m2 <= best:
            continue
        report = verify(s, stack(r))
        if not report.decodability_ok or report.leakage_dims > leak_budget:
            continue
        total = s.m1 + s.m2
        if total > best:
            best = total
        if total > threshold:
            counterexamples.append(
                {
                    "trial": t,
                    "seed": trial_seed,
                    "observed": total,
                    "expected": threshold,
                    "leakage_dims": report.leakage_dims,
                    "scheme": s,
                    "realization": r,
                }
            )
    return SearchResult(trials, best, threshold, tuple(counterexamples))
