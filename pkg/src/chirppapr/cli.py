"""Command-line entry point.

Exit codes: 0 success, 1 configuration error, 2 runtime or I/O error,
3 selftest failure.
"""
from __future__ import annotations

import argparse
import logging
import sys

from . import harness
from .config import ExperimentConfig, apply_overrides, load_config
from .errors import ConfigError, MissingCurve
from .selftest import run_selftest

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME, EXIT_SELFTEST = 0, 1, 2, 3

# per-subcommand defaults layered over ExperimentConfig()
SUBCOMMAND_DEFAULTS = {
    "ccdf": {},
    "compare": {
        "waveform": "OCDM,AFDM",
        "spreading": "IDFT",
        "baseline": "PTS,SLM,CHIRP,GPS",
    },
    "energy": {"waveform": "OCDM,AFDM", "spreading": "IDFT"},
}

# flag -> help; every config key is also accepted as --<key>
FLAGS = {
    "n": "number of subcarriers N",
    "trials": "Monte Carlo realizations",
    "seed": "64-bit master seed",
    "waveform": "comma list of OFDM, OCDM, AFDM",
    "spreading": "comma list of WHT, DCT, ZC, IDFT (or none)",
    "c1": "AFDM chirp parameter c1",
    "c2": "AFDM chirp parameter c2",
    "zc-root": "Zadoff-Chu root u",
    "stride": "interleaver stride Q (default: sqrt(N) or nearest divisor below)",
    "grid-max-db": "upper end of the PAPR0 grid",
    "grid-step-db": "PAPR0 grid step",
    "oversample": "integer oversampling factor for PAPR measurement",
    "out": "output directory",
    "grid-min-db": "lower end of the PAPR0 grid",
    "modulation": "constellation (qpsk)",
    "baseline": "comma list of PTS, SLM, CHIRP, GPS, CLIP, CLIPCHIRP",
    "workers": "worker processes",
    "chunk": "trials per work item (fixed so results do not depend on workers)",
    "pts-blocks": "PTS subblocks M",
    "pts-phases": "PTS phase set, e.g. 1,-1,1j,-1j",
    "pts-partition": "contiguous or interleaved",
    "slm-candidates": "SLM candidates U",
    "slm-seed": "seed of the SLM phase table",
    "gps-groups": "grouped pre-chirp groups G",
    "gps-c2": "grouped pre-chirp c2 candidates",
    "clip-beta": "clipping amplitude",
    "clip-cutoff": "post-clip low-pass cutoff as a fraction of the band",
    "proposed": "spreading whose gain feeds the energy report",
    "sensors": "sensor counts for the energy table",
}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key = value config file")
    for flag, text in FLAGS.items():
        p.add_argument(f"--{flag}", dest=flag.replace("-", "_"), default=None, help=text)
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chirppapr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("ccdf", "PAPR CCDF for waveforms with and without spreading"),
        ("compare", "spreading against PTS, SLM, chirp selection and grouped pre-chirp"),
        ("energy", "power-reduction and network energy/CO2 table"),
    ):
        _add_common(sub.add_parser(name, help=text))
    sub.add_parser("selftest", help="run the invariant checks")
    return parser


def resolve_config(args: argparse.Namespace) -> ExperimentConfig:
    cfg = apply_overrides(ExperimentConfig(), SUBCOMMAND_DEFAULTS[args.command])
    if args.config:
        cfg = load_config(args.config, cfg)
    flags = {k.replace("-", "_"): getattr(args, k.replace("-", "_")) for k in FLAGS}
    cfg = apply_overrides(cfg, {k: v for k, v in flags.items() if v is not None})
    cfg.validate()
    return cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "selftest":
        return EXIT_OK if run_selftest() else EXIT_SELFTEST

    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        cfg = resolve_config(args)
        # builds and checks every pipeline before any trial runs
        harness.build_pipelines(cfg, with_baselines=args.command == "compare")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        if args.command == "ccdf":
            report = harness.run_ccdf(cfg)
        elif args.command == "compare":
            report = harness.compare(cfg)
        else:
            report = harness.energy_report(cfg)
        files = harness.write_outputs(report, cfg.out)
    except MissingCurve as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME

    sys.stdout.write(files["report"].read_text())
    for path in files.values():
        print(f"wrote {path}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
