"""Scheme construction: alignment identities, role swaps, file round trips."""

import json
from fractions import Fraction

import pytest

from sdoflab.channel import SystemDims, sample_realization, stack
from sdoflab.errors import InvalidRegime, MalformedFile
from sdoflab.ratmat import RationalMatrix, hconcat
from sdoflab.schemes import (
    LinearScheme,
    compose_mac_timeshare,
    construct_wth_scheme,
    load_scheme,
    save_scheme,
    scheme_to_dict,
)
from sdoflab.verifier import verify


def make(N, K, chan_seed=0, scheme_seed=1):
    r = sample_realization(SystemDims(N, K, 2), chan_seed)
    return r, construct_wth_scheme(r.legitimate, scheme_seed)


class TestConstruction:
    @pytest.mark.parametrize("N,K", [(1, 1), (2, 1), (2, 3), (3, 2), (4, 8)])
    def test_symbol_counts(self, N, K):
        _, s = make(N, K)
        assert s.m1 == 2 * N - K
        assert s.m2 == 0
        assert s.n1 == s.n2 == K
        assert s.barP1.shape == (2 * N, 2 * N - K)
        assert s.barQ1.shape == (2 * N, K)

    def test_siso_half_dof(self):
        r, s = make(1, 1)
        assert s.m1 == 1
        report = verify(s, stack(r))
        assert report.achieved_sum_sdof == Fraction(1, 2)

    def test_no_eavesdropper_antennas(self):
        _, s = make(2, 0)
        assert s.m1 == 4
        assert s.n1 == s.n2 == 0
        assert s.barQ1.shape == (4, 0)

    def test_saturated_eavesdropper(self):
        _, s = make(2, 3)
        assert s.m1 == 1

    def test_k_equal_2n_no_information(self):
        _, s = make(2, 4)
        assert s.m1 == 0
        assert s.barP1.shape == (4, 0)

    def test_k_beyond_2n_rejected(self):
        r = sample_realization(SystemDims(2, 5, 2), 0)
        with pytest.raises(InvalidRegime):
            construct_wth_scheme(r.legitimate, 1)

    def test_wrong_blocklength_rejected(self):
        r = sample_realization(SystemDims(2, 1, 3), 0)
        with pytest.raises(InvalidRegime):
            construct_wth_scheme(r.legitimate, 1)

    @pytest.mark.parametrize("N,K", [(2, 1), (3, 2), (2, 4)])
    def test_received_information_plus_noise_spans_everything(self, N, K):
        r, s = make(N, K)
        c = stack(r)
        received = hconcat([c.barH1 @ s.barP1, c.barH1 @ s.barQ1])
        assert received.rank() == 2 * N

    @pytest.mark.parametrize("N,K", [(1, 1), (2, 1), (2, 2), (3, 2)])
    def test_noise_aligns_at_legitimate_receiver(self, N, K):
        r, s = make(N, K)
        c = stack(r)
        assert c.barH1 @ s.barQ1 == c.barH2 @ s.barQ2

    def test_eavesdropper_links_never_matter(self):
        dims = SystemDims(2, 2, 2)
        rA = sample_realization(dims, 5)
        rB = sample_realization(dims, 6)
        hybrid = type(rA)(dims, rA.h1, rA.h2, rB.g1, rB.g2)
        sA = construct_wth_scheme(rA.legitimate, 9)
        sH = construct_wth_scheme(hybrid.legitimate, 9)
        assert sA == sH

    def test_accepts_full_realization_too(self):
        r = sample_realization(SystemDims(2, 1, 2), 5)
        assert construct_wth_scheme(r, 9) == construct_wth_scheme(r.legitimate, 9)

    def test_deterministic(self):
        r = sample_realization(SystemDims(2, 2, 2), 5)
        assert construct_wth_scheme(r.legitimate, 9) == construct_wth_scheme(r.legitimate, 9)

    def test_role_swap(self):
        r = sample_realization(SystemDims(2, 1, 2), 5)
        s = construct_wth_scheme(r.legitimate, 9, info_transmitter=2)
        assert s.m1 == 0 and s.m2 == 3
        assert s.barP2.shape == (4, 3)
        report = verify(s, stack(r))
        assert report.decodability_ok and report.security_ok


class TestTimeShare:
    @pytest.mark.parametrize(
        "N,K,expected",
        [(1, 1, Fraction(1, 4)), (2, 2, Fraction(1, 2)), (1, 2, Fraction(0))],
    )
    def test_equal_rate_pair(self, N, K, expected):
        dims = SystemDims(N, K, 2)
        rA, rB = sample_realization(dims, 31), sample_realization(dims, 32)
        first, second = compose_mac_timeshare(rA, rB, seed=7)
        repA, repB = verify(first, stack(rA)), verify(second, stack(rB))
        assert repA.decodability_ok and repA.security_ok
        assert repB.decodability_ok and repB.security_ok
        total_slots = 4
        d1 = Fraction(first.m1 + second.m1, total_slots)
        d2 = Fraction(first.m2 + second.m2, total_slots)
        assert d1 == d2 == expected
        assert d1 + d2 == min(Fraction(2 * N - K, 2), Fraction(2 * N - K, 2))

    def test_dims_must_match(self):
        rA = sample_realization(SystemDims(1, 1, 2), 1)
        rB = sample_realization(SystemDims(2, 1, 2), 1)
        with pytest.raises(ValueError):
            compose_mac_timeshare(rA, rB, seed=0)

    def test_k_beyond_2n_rejected(self):
        dims = SystemDims(1, 3, 2)
        rA, rB = sample_realization(dims, 1), sample_realization(dims, 2)
        with pytest.raises(InvalidRegime):
            compose_mac_timeshare(rA, rB, seed=0)


class TestSchemeFiles:
    def test_round_trip(self, tmp_path):
        _, s = make(2, 1, chan_seed=3, scheme_seed=4)
        path = tmp_path / "scheme.json"
        save_scheme(s, path)
        assert load_scheme(path) == s

    def test_mismatched_column_count(self, tmp_path):
        _, s = make(2, 1)
        doc = scheme_to_dict(s)
        doc["m1"] = 2
        path = tmp_path / "broken.json"
        path.write_text(json.dumps(doc))
        with pytest.raises(MalformedFile, match="barP1"):
            load_scheme(path)

    def test_missing_matrix(self, tmp_path):
        _, s = make(1, 1)
        doc = scheme_to_dict(s)
        del doc["barQ2"]
        path = tmp_path / "broken.json"
        path.write_text(json.dumps(doc))
        with pytest.raises(MalformedFile, match="barQ2"):
            load_scheme(path)

    def test_negative_count(self, tmp_path):
        _, s = make(1, 1)
        doc = scheme_to_dict(s)
        doc["n1"] = -1
        path = tmp_path / "broken.json"
        path.write_text(json.dumps(doc))
        with pytest.raises(MalformedFile, match="n1"):
            load_scheme(path)

    def test_hand_written_minimal_scheme_verifies(self, tmp_path):
        # N=1, K=1, n=2 with unit legitimate links: the jamming column
        # (1, 1) is shared, the information column (1, 0) completes the
        # receiver space, and the two eavesdropper links differ enough to
        # keep the noise full rank there.
        scheme_doc = {
            "dims": {"n_antennas": 1, "k_eve": 1, "n_slots": 2},
            "m1": 1, "m2": 0, "n1": 1, "n2": 1,
            "barP1": [["1"], ["0"]],
            "barP2": [[], []],
            "barQ1": [["1"], ["1"]],
            "barQ2": [["1"], ["1"]],
        }
        realization_doc = {
            "dims": {"n_antennas": 1, "k_eve": 1, "n_slots": 2},
            "h1": [[["1"]], [["1"]]],
            "h2": [[["1"]], [["1"]]],
            "g1": [[["1"]], [["1"]]],
            "g2": [[["2"]], [["3"]]],
        }
        spath = tmp_path / "scheme.json"
        rpath = tmp_path / "realization.json"
        spath.write_text(json.dumps(scheme_doc))
        rpath.write_text(json.dumps(realization_doc))

        from sdoflab.channel import load_realization

        s = load_scheme(spath)
        r = load_realization(rpath)
        report = verify(s, stack(r))
        assert report.decodable_dims == 1
        assert report.leakage_dims == 0
        assert report.achieved_sum_sdof == Fraction(1, 2)

    def test_scheme_invariant_checked_at_construction(self):
        dims = SystemDims(1, 1, 2)
        with pytest.raises(ValueError, match="barP1"):
            LinearScheme(
                dims, 2, 0, 0, 0,
                RationalMatrix([[1], [1]]),
                RationalMatrix([[], []], cols=0),
                RationalMatrix([[], []], cols=0),
                RationalMatrix([[], []], cols=0),
            )
