"""Command-line front end: reproducible seeded experiments with CSV/JSON
artifacts.

Flags are canonicalized into a :class:`RunConfig` and every command runs
from that record alone: seeds are mandatory, there is no wall-clock
anywhere, and rerunning a command reproduces its output files byte for
byte.  Exit codes: 0 success, 1 usage/validation error, 2 a randomized
search found a counterexample (so CI can trip on it).

The environment variable ``SDOFLAB_GRID_DENOM`` overrides the rational
grid denominator D used by all samplers.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import bounds as bounds_mod
from . import channel, entropy, oracles, schemes, verifier
from .errors import SdofLabError

GRID_DENOM_ENV = "SDOFLAB_GRID_DENOM"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COUNTEREXAMPLE = 2


@dataclass(frozen=True)
class RunConfig:
    """Everything that determines a run (reproducibility contract)."""

    command: str
    grid_denom: int
    n_antennas: int | None = None
    k_eve: int | None = None
    n_slots: int | None = None
    seed: int | None = None
    trials: int | None = None
    power_grid: tuple[float, ...] | None = None
    output_path: str | None = None
    format: str = "csv"
    options: dict = field(default_factory=dict)


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad flags; we reserve 2 for
    counterexamples, so remap usage errors to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _grid_denom() -> int:
    raw = os.environ.get(GRID_DENOM_ENV)
    if raw is None:
        return channel.DEFAULT_GRID_DENOM
    try:
        denom = int(raw)
    except ValueError:
        raise SdofLabError(f"{GRID_DENOM_ENV} must be an integer, got {raw!r}")
    if denom < 2:
        raise SdofLabError(f"{GRID_DENOM_ENV} must be >= 2, got {denom}")
    return denom


def _parse_k_range(text: str) -> tuple[int, int]:
    try:
        lo_s, hi_s = text.split(":")
        lo, hi = int(lo_s), int(hi_s)
    except ValueError:
        raise SdofLabError(f"--k-range wants LO:HI, got {text!r}")
    if lo < 0 or hi < lo:
        raise SdofLabError(f"--k-range wants 0 <= LO <= HI, got {text!r}")
    return lo, hi


def _parse_powers(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError:
        raise SdofLabError(f"--powers wants comma-separated numbers, got {text!r}")


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        # newline="" keeps CRLF rows byte-exact on every platform
        Path(path).write_text(text, newline="")


def _write_json(path: str | None, obj) -> None:
    _write(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sdoflab", description=__doc__,
                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser(
        "bounds",
        help="emit the closed-form sum s.d.o.f. curve over a K range",
        description="Curve columns (CSV header): " + bounds_mod.CURVE_CSV_HEADER
        + ". Rationals are p/q strings; comparison columns are blank outside"
        " their stated regimes.",
    )
    sp.add_argument("--n", "--antennas", type=int, required=True, metavar="N",
                    help="antennas per legitimate terminal")
    sp.add_argument("--k-range", "--eve-antenna-range", required=True, metavar="LO:HI",
                    help="inclusive eavesdropper-antenna range")
    sp.add_argument("--format", choices=("csv", "json", "gnuplot"), default="csv")
    sp.add_argument("--out", metavar="PATH", help="output file (default: stdout)")

    sp = sub.add_parser(
        "construct",
        help="sample a channel realization and build the 2-slot helper scheme",
        description="Writes two JSON files: the sampled realization and the"
        " constructed scheme (p/q rational entries, bit-exact round trip).",
    )
    sp.add_argument("--n", "--antennas", type=int, required=True, metavar="N")
    sp.add_argument("--k", "--eve-antennas", type=int, required=True, metavar="K")
    sp.add_argument("--slots", "--blocklength", type=int, default=2,
                    help="channel uses (the construction needs 2)")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--info-transmitter", type=int, choices=(1, 2), default=1)
    sp.add_argument("--out-scheme", default="scheme.json", metavar="PATH")
    sp.add_argument("--out-realization", default="realization.json", metavar="PATH")

    sp = sub.add_parser(
        "verify",
        help="exact decodability/security checks for a scheme file",
        description="CSV row header: " + verifier.REPORT_CSV_HEADER,
    )
    sp.add_argument("--scheme", required=True, metavar="PATH")
    sp.add_argument("--realization", required=True, metavar="PATH")
    sp.add_argument("--format", choices=("csv", "json"), default="json")
    sp.add_argument("--out", metavar="PATH", help="output file (default: stdout)")

    sp = sub.add_parser(
        "leakage",
        help="Gaussian MI sweep over a power grid with fitted d.o.f. slopes",
        description="Sweep CSV header: P,mi_legitimate_nats,mi_leakage_nats."
        " The JSON summary carries fitted slopes, residuals and the"
        " secrecy-rate proxy at the top grid power.",
    )
    sp.add_argument("--scheme", required=True, metavar="PATH")
    sp.add_argument("--realization", required=True, metavar="PATH")
    sp.add_argument("--powers", metavar="P1,P2,...", help="default: 1e2,1e4,1e6,1e8,1e10")
    sp.add_argument("--out", metavar="PATH", help="sweep CSV (default: stdout)")
    sp.add_argument("--summary", metavar="PATH", help="slope summary JSON")

    sp = sub.add_parser(
        "oracle-rank",
        help="Monte Carlo check of the generic product-rank value",
        description="Per trial: rank([G1 P1, G2 P2]) must equal min(p1+p2, K)"
        " for random K x N matrices G_i and independent rank-p_i precoders."
        " Output: TrialSummary JSON.",
    )
    sp.add_argument("--n", "--antennas", type=int, required=True, metavar="N")
    sp.add_argument("--k", "--eve-antennas", type=int, required=True, metavar="K")
    sp.add_argument("--p1", type=int, required=True)
    sp.add_argument("--p2", type=int, required=True)
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--out", metavar="PATH", help="TrialSummary JSON (default: stdout)")

    sp = sub.add_parser(
        "oracle-align",
        help="Monte Carlo check that hidden-CSIT spans are never smaller",
        description="Per trial (K = N): rank([G1 A1, G2 A2]) >="
        " rank([H1 A1, H2 A2]) for precoders built from H only."
        " Output: TrialSummary JSON.",
    )
    sp.add_argument("--n", "--antennas", type=int, required=True, metavar="N")
    sp.add_argument("--slots", "--blocklength", type=int, default=2)
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--out", metavar="PATH", help="TrialSummary JSON (default: stdout)")

    sp = sub.add_parser(
        "oracle-fullspace",
        help="Monte Carlo check that positive-rate schemes jam the full eavesdropper space",
        description="Per trial: construct + verify the helper scheme; whenever"
        " the achieved sum s.d.o.f. is positive, the noise rank must be Kn."
        " Output: TrialSummary JSON.",
    )
    sp.add_argument("--n", "--antennas", type=int, required=True, metavar="N")
    sp.add_argument("--k", "--eve-antennas", type=int, required=True, metavar="K")
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--out", metavar="PATH", help="TrialSummary JSON (default: stdout)")

    sp = sub.add_parser(
        "search",
        help="randomized falsification search against the linear sum-rate ceiling",
        description="Samples random / aligned / perturbed schemes; exits 2 if"
        " any decodable scheme within the leak budget beats"
        " ceil(n(2N-K)/2) + budget (expected never; this is evidence for the"
        " ceiling, not verification of it). Counterexamples are written as"
        " replay JSON files under --replay-dir.",
    )
    sp.add_argument("--n", "--antennas", type=int, required=True, metavar="N")
    sp.add_argument("--k", "--eve-antennas", type=int, required=True, metavar="K")
    sp.add_argument("--slots", "--blocklength", type=int, default=2)
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--leak-budget", type=int, default=0)
    sp.add_argument("--out", metavar="PATH", help="SearchResult JSON (default: stdout)")
    sp.add_argument("--replay-dir", metavar="DIR", help="where to drop counterexample replays")
    return p


def config_from_args(args, grid_denom: int) -> RunConfig:
    """Canonicalize parsed flags into the run-determining record."""
    powers = None
    if getattr(args, "powers", None):
        powers = _parse_powers(args.powers)
    options = {
        key: getattr(args, key)
        for key in (
            "k_range", "p1", "p2", "leak_budget", "scheme", "realization",
            "summary", "out_scheme", "out_realization", "replay_dir",
            "info_transmitter",
        )
        if getattr(args, key, None) is not None
    }
    return RunConfig(
        command=args.command,
        grid_denom=grid_denom,
        n_antennas=getattr(args, "n", None),
        k_eve=getattr(args, "k", None),
        n_slots=getattr(args, "slots", None),
        seed=getattr(args, "seed", None),
        trials=getattr(args, "trials", None),
        power_grid=powers,
        output_path=getattr(args, "out", None),
        format=getattr(args, "format", "csv"),
        options=options,
    )


def _cmd_bounds(cfg: RunConfig) -> int:
    k_range = _parse_k_range(cfg.options["k_range"])
    text = bounds_mod.emit_curve(cfg.n_antennas, k_range, cfg.format)
    _write(cfg.output_path, text)
    n_rows = k_range[1] - k_range[0] + 1
    print(f"bounds: N={cfg.n_antennas} K={k_range[0]}..{k_range[1]} -> {n_rows} rows ({cfg.format})")
    return EXIT_OK


def _cmd_construct(cfg: RunConfig) -> int:
    dims = channel.SystemDims(cfg.n_antennas, cfg.k_eve, cfg.n_slots)
    r = channel.sample_realization(dims, cfg.seed, cfg.grid_denom)
    s = schemes.construct_wth_scheme(
        r.legitimate, oracles.derive_seed(cfg.seed, 1), cfg.grid_denom,
        info_transmitter=cfg.options["info_transmitter"],
    )
    channel.save_realization(r, cfg.options["out_realization"])
    schemes.save_scheme(s, cfg.options["out_scheme"])
    print(
        f"construct: N={cfg.n_antennas} K={cfg.k_eve} seed={cfg.seed} -> "
        f"m={s.m1 + s.m2} info + {s.n1}+{s.n2} noise symbols over {cfg.n_slots} slots "
        f"({cfg.options['out_scheme']}, {cfg.options['out_realization']})"
    )
    return EXIT_OK


def _cmd_verify(cfg: RunConfig) -> int:
    s = schemes.load_scheme(cfg.options["scheme"])
    r = channel.load_realization(cfg.options["realization"])
    report = verifier.verify(s, channel.stack(r))
    if cfg.format == "json":
        _write(cfg.output_path, report.to_json())
    else:
        _write(cfg.output_path, verifier.REPORT_CSV_HEADER + "\r\n" + report.to_csv_row() + "\r\n")
    sdof = report.to_dict()["achieved_sum_sdof"]
    print(
        f"verify: decodable={report.decodable_dims} leakage={report.leakage_dims} "
        f"eve_rank={report.eve_space_rank} sdof={sdof}"
    )
    return EXIT_OK


def _cmd_leakage(cfg: RunConfig) -> int:
    s = schemes.load_scheme(cfg.options["scheme"])
    r = channel.load_realization(cfg.options["realization"])
    c = channel.stack(r)
    powers = cfg.power_grid if cfg.power_grid is not None else entropy.POWER_GRID_DEFAULT
    legit = entropy.dof_slope(lambda p: entropy.legitimate_mi(s, c, p), powers)
    leak = entropy.dof_slope(lambda p: entropy.leakage_mi(s, c, p), powers)
    lines = ["P,mi_legitimate_nats,mi_leakage_nats"]
    for p, yv, zv in zip(legit.powers, legit.values, leak.values):
        lines.append(f"{p!r},{yv!r},{zv!r}")
    _write(cfg.output_path, "\r\n".join(lines) + "\r\n")
    summary = {
        "legitimate_slope": legit.fitted_slope,
        "legitimate_residual": legit.residual,
        "leakage_slope": leak.fitted_slope,
        "leakage_residual": leak.residual,
        "secrecy_rate_proxy": entropy.secrecy_rate_proxy(s, c, powers[-1]),
    }
    if cfg.options.get("summary"):
        _write_json(cfg.options["summary"], summary)
    print(
        f"leakage: legitimate slope {legit.fitted_slope:.4f}, "
        f"leakage slope {leak.fitted_slope:.4f} over {len(powers)} powers"
    )
    return EXIT_OK


def _summary_out(cfg: RunConfig, summary: oracles.TrialSummary, label: str) -> int:
    _write_json(cfg.output_path, summary.to_dict())
    status = "ok" if summary.ok else f"{len(summary.counterexamples)} COUNTEREXAMPLES"
    print(f"{label}: {summary.successes}/{summary.trials} trials succeeded ({status})")
    return EXIT_OK if summary.ok else EXIT_COUNTEREXAMPLE


def _cmd_oracle_rank(cfg: RunConfig) -> int:
    summary = oracles.rank_lemma_trial(
        cfg.n_antennas, cfg.k_eve, cfg.options["p1"], cfg.options["p2"],
        cfg.trials, cfg.seed, denom=cfg.grid_denom,
    )
    return _summary_out(cfg, summary, "oracle-rank")


def _cmd_oracle_align(cfg: RunConfig) -> int:
    summary = oracles.least_alignment_trial(
        cfg.n_antennas, cfg.n_slots, cfg.trials, cfg.seed, cfg.grid_denom
    )
    return _summary_out(cfg, summary, "oracle-align")


def _cmd_oracle_fullspace(cfg: RunConfig) -> int:
    summary = oracles.full_space_trial(
        cfg.n_antennas, cfg.k_eve, cfg.trials, cfg.seed, cfg.grid_denom
    )
    return _summary_out(cfg, summary, "oracle-fullspace")


def _cmd_search(cfg: RunConfig) -> int:
    result = oracles.converse_search(
        cfg.n_antennas, cfg.k_eve, cfg.n_slots, cfg.trials, cfg.seed,
        leak_budget=cfg.options.get("leak_budget", 0), denom=cfg.grid_denom,
    )
    _write_json(cfg.output_path, result.to_dict())
    if result.counterexamples and cfg.options.get("replay_dir"):
        replay_dir = Path(cfg.options["replay_dir"])
        replay_dir.mkdir(parents=True, exist_ok=True)
        for ce in result.counterexamples:
            doc = {
                "trial": ce["trial"],
                "seed": ce["seed"],
                "observed": ce["observed"],
                "expected": ce["expected"],
                "scheme": schemes.scheme_to_dict(ce["scheme"]),
                "realization": channel.realization_to_dict(ce["realization"]),
            }
            path = replay_dir / f"counterexample_trial{ce['trial']}.json"
            path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    status = "ok" if result.ok else f"{len(result.counterexamples)} COUNTEREXAMPLES"
    print(
        f"search: best m1+m2 = {result.best_found} over {result.trials} trials, "
        f"threshold {result.threshold} ({status})"
    )
    return EXIT_OK if result.ok else EXIT_COUNTEREXAMPLE


_COMMANDS = {
    "bounds": _cmd_bounds,
    "construct": _cmd_construct,
    "verify": _cmd_verify,
    "leakage": _cmd_leakage,
    "oracle-rank": _cmd_oracle_rank,
    "oracle-align": _cmd_oracle_align,
    "oracle-fullspace": _cmd_oracle_fullspace,
    "search": _cmd_search,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args, _grid_denom())
        return _COMMANDS[cfg.command](cfg)
    except SdofLabError as exc:
        print(f"sdoflab {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"sdoflab {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
