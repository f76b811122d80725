"""Command-line surface.

Subcommands
-----------
verify          run every randomized law suite; exit 1 on any failure
analyze         redundancy report for a CSV signal, as key=value lines
encode          CSV signal or PGM image -> FSG1 container
decode          FSG1 container -> CSV or PGM (chosen by the output extension)
demo-prototype  worked unit-segment decomposition of 1,2,3,4,5
stats           sparsity/entropy metrics for a raw file vs its container

Exit codes: 0 success, 1 verification failure, 2 input or format error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import codec
from .container import read_container_file, write_container_file
from .errors import SigrepError
from .formats import read_csv_signal, read_pgm, write_csv_signal, write_pgm
from .laws import run_all
from .signal import prototype_decomposition, redundancy_report, segment_signal

_DETECTOR_ALIASES = {
    "translation": "translation",
    "affine": "affine",
    "amp": "amp_affine",
    "amp_affine": "amp_affine",
    "amp-affine": "amp_affine",
}


def _parse_tol(text: str):
    if text.strip().lower() in ("inf", "infinity"):
        return float("inf")
    return Fraction(text)


def _parse_detectors(text: str):
    names = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if tok not in _DETECTOR_ALIASES:
            raise ValueError(f"unknown detector {tok!r} "
                             "(choose from translation, affine, amp)")
        name = _DETECTOR_ALIASES[tok]
        if name not in names:
            names.append(name)
    if not names:
        raise ValueError("no detectors selected")
    return tuple(names)


def _is_pgm(path: str) -> bool:
    return str(path).lower().endswith(".pgm")


def _read_raw(path: str):
    """Payload of a CSV signal or PGM image (by extension): (payload, origin)."""
    if _is_pgm(path):
        rows, _maxval = read_pgm(path)
        return rows, 0
    samples, origin = read_csv_signal(path)
    return samples, origin


def cmd_verify(args) -> int:
    if args.instances < 1:
        raise ValueError("--instances must be >= 1")
    failed = 0
    results = run_all(seed=args.seed, instances=args.instances)
    for res in results:
        print(f"{res.name}: {res.checked} instances, "
              f"{len(res.failures)} failures")
        for msg in res.failures:
            print(f"    {msg}")
        failed += len(res.failures)
    print(f"total: {len(results)} suites, {failed} failures")
    return 1 if failed else 0


def cmd_analyze(args) -> int:
    if args.segment_len < 1:
        raise ValueError("--segment-len must be >= 1")
    samples, origin = read_csv_signal(args.input)
    step = args.segment_len
    breakpoints = list(range(origin + step, origin + len(samples), step))
    segments = segment_signal(samples, origin, breakpoints)
    detectors = _parse_detectors(args.detectors)
    report = redundancy_report(segments, tol=args.tol, detectors=detectors)

    print(f"signal.path={args.input}")
    print(f"signal.origin={origin}")
    print(f"signal.length={len(samples)}")
    print(f"segment.count={len(segments)}")
    print(f"tol={report.tol}")
    print(f"detectors={','.join(detectors)}")
    for e in report.entries:
        n = e.target_index
        tgt = segments[n]
        print(f"entry.{n}.target=[{tgt.start},{tgt.end})")
        print(f"entry.{n}.redundant={'true' if e.redundant else 'false'}")
        if not e.redundant:
            continue
        src = segments[e.source_index]
        arr = e.arrow
        relation = ("observed isomorphism" if e.residual_sq == 0
                    else "within-tolerance match")
        print(f"entry.{n}.source=[{src.start},{src.end})")
        print(f"entry.{n}.detector={e.detector}")
        print(f"entry.{n}.relation={relation}")
        print(f"entry.{n}.stride={arr.stride}")
        print(f"entry.{n}.shift={arr.shift}")
        print(f"entry.{n}.amp={arr.amp}")
        print(f"entry.{n}.residual_sq={e.residual_sq}")
    candidates = max(len(report.entries), 1)
    print(f"summary.redundant_count={report.redundant_count}")
    print("summary.redundant_fraction="
          f"{Fraction(report.redundant_count, candidates)}")
    return 0


def cmd_encode(args) -> int:
    payload, origin = _read_raw(args.input)
    enc = codec.encode(payload, args.policy, origin=origin)
    write_container_file(args.output, enc)
    shape = "x".join(str(d) for d in enc.shape)
    print(f"wrote {args.output}: dimension={enc.dimension} shape={shape} "
          f"policy={enc.policy} records={len(enc.records)}")
    return 0


def cmd_decode(args) -> int:
    enc = read_container_file(args.input)
    payload = codec.decode(enc)
    if _is_pgm(args.output):
        if enc.dimension != 2:
            raise ValueError("PGM output needs a 2-D container; this one is 1-D")
        write_pgm(args.output, payload)
    else:
        if enc.dimension != 1:
            raise ValueError("CSV output needs a 1-D container; "
                             "name the output file *.pgm instead")
        write_csv_signal(args.output, payload, origin=enc.origin)
    print(f"wrote {args.output}")
    return 0


def cmd_demo(args) -> int:
    signal = [1, 2, 3, 4, 5]
    demo = prototype_decomposition(signal, origin=1)
    print(f"signal={','.join(str(v) for v in signal)}")
    print(f"origin={demo['origin']}")
    print(f"seed={demo['seed']}")
    for k, arr in enumerate(demo["arrows"], start=1):
        print(f"arrow.{k}: [{arr.source.start},{arr.source.end}) -> "
              f"[{arr.target.start},{arr.target.end}) S={arr.stride} "
              f"T={arr.shift} c={arr.amp} delta={arr.delta[0]}")
    print(f"first_deltas={','.join(str(d) for d in demo['first_deltas'])}")
    print(f"second_deltas={','.join(str(d) for d in demo['second_deltas'])}")
    print(f"reconstruction={','.join(str(v) for v in demo['reconstruction'])}")
    print(f"exact={'true' if demo['exact'] else 'false'}")
    return 0


def cmd_stats(args) -> int:
    payload, _origin = _read_raw(args.raw)
    enc = read_container_file(args.encoded)
    m = codec.metrics(payload, enc)
    print(f"nonzero_delta_fraction={m.nonzero_delta_fraction}")
    print(f"raw_entropy_bits_per_sample={m.raw_entropy:.6f}")
    print(f"delta_entropy_bits_per_sample={m.delta_entropy:.6f}")
    print(f"encoded_size_bytes={m.encoded_size}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sigrep",
        description="Structure-arrow signal representation toolkit: "
                    "measure-space laws, segment arrows, lossless coding.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run all randomized law suites")
    p.add_argument("--seed", type=int, default=0,
                   help="base RNG seed (default 0)")
    p.add_argument("--instances", type=int, default=25,
                   help="random instances per suite (default 25)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("analyze",
                       help="redundancy report for a CSV signal")
    p.add_argument("input", help="CSV signal, one sample per line")
    p.add_argument("--segment-len", type=int, default=8, dest="segment_len",
                   help="segment length in samples (default 8)")
    p.add_argument("--tol", type=_parse_tol, default=Fraction(0),
                   help="residual l2-norm tolerance; exact rational or 'inf' "
                        "(default 0)")
    p.add_argument("--detectors", default="translation,affine,amp",
                   help="comma list of translation, affine, amp "
                        "(default: all three)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("encode",
                       help="encode a CSV signal or PGM image to a container")
    p.add_argument("input", help="*.pgm image or CSV signal")
    p.add_argument("-o", "--output", required=True, help="container file")
    p.add_argument("--policy", choices=("predecessor", "detected"),
                   default="predecessor",
                   help="predictor policy (default predecessor)")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="decode a container")
    p.add_argument("input", help="container file")
    p.add_argument("-o", "--output", required=True,
                   help="*.pgm for images, anything else is written as CSV")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("demo-prototype",
                       help="worked decomposition of the 1,2,3,4,5 signal")
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("stats",
                       help="compare a raw file against its encoded container")
    p.add_argument("raw", help="original CSV signal or PGM image")
    p.add_argument("encoded", help="container produced by encode")
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SigrepError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
