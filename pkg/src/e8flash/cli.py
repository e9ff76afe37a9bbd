"""Command line front end: simulate, rates, selftest, table."""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .presets import BCH_PRESETS, PUBLISHED_RATES, RS_PRESETS
from .sim import SCHEMES, SimConfig, csv_row, parse_snrs, run_wer, to_csv


def _seed(text: str) -> int:
    v = int(text, 10)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be a decimal 64-bit unsigned integer")
    return v


def _snrs(text: str) -> tuple:
    try:
        return parse_snrs(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="e8flash", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simulate", help="Monte-Carlo word error rate sweep, CSV on stdout")
    s.add_argument("--scheme", choices=SCHEMES, required=True)
    s.add_argument("--preset", choices=list(RS_PRESETS) + list(BCH_PRESETS))
    s.add_argument("--q", type=int, default=8, help="levels per cell (default 8)")
    s.add_argument("--snr", type=_snrs, required=True,
                   help="peak SNR in dB: start:step:end, comma list, or single value")
    s.add_argument("--seed", type=_seed, default=0)
    s.add_argument("--min-errors", type=int, default=100)
    s.add_argument("--max-frames", type=int, default=10_000_000)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")

    sub.add_parser("rates", help="code parameters and flash rates for all presets")
    st = sub.add_parser("selftest", help="run the built-in oracle checks")
    st.add_argument("--seed", type=_seed, default=1)
    sub.add_parser("table", help="list the 240 minimal-vector error patterns")
    return p


def cmd_simulate(args, parser: argparse.ArgumentParser) -> int:
    try:
        cfg = SimConfig(args.scheme, args.snr, args.preset, args.q, args.seed,
                        args.min_errors, args.max_frames, args.workers)
    except ValueError as exc:
        parser.error(str(exc))  # usage on stderr, exit status 2
    sys.stdout.write(to_csv([], header=True))
    sys.stdout.flush()

    def emit(point):
        sys.stdout.write(",".join(csv_row(point)) + "\n")
        sys.stdout.flush()
        if args.verbose:
            print(f"{point.snr_db:.2f} dB: {point.word_errors}/{point.frames} "
                  f"in {point.wall_time:.1f}s", file=sys.stderr)

    run_wer(cfg, progress=emit)
    return 0


def rates_table() -> str:
    from .baseline import baseline_config
    from .codec import frame_config

    lines = [f"{'preset':<17}{'s':>6}{'cells':>7}{'bits':>6}{'code rate':>11}"
             f"{'flash rate':>12}{'published':>11}"]
    for name in RS_PRESETS:
        c = frame_config(name)
        lines.append(f"{name:<17}{c.rs.s:>6}{c.N:>7}{c.k:>6}{c.k_c / c.n_c:>11.3f}"
                     f"{c.rate:>12.3f}{PUBLISHED_RATES[name]:>11.3f}")
    for name in BCH_PRESETS:
        b = baseline_config(name)
        lines.append(f"{name:<17}{b.bch.s:>6}{b.cells:>7}{b.k:>6}{b.bch.k / b.bch.n:>11.3f}"
                     f"{b.rate:>12.3f}{PUBLISHED_RATES[name]:>11.3f}")
    return "\n".join(lines)


def selftest(seed: int = 1) -> list[tuple[str, bool, str]]:
    """Run the oracle suites; returns (name, passed, detail) per suite."""
    from .bch import bch_decode, bch_encode
    from .codec import decode_frames, encode_frames, frame_config
    from .gf import clmul_mod, get_field
    from .lattice import build_error_table, e8_nearest, minimal_vectors
    from .oracles import brute_nearest
    from .presets import get_bch, get_rs
    from .rs import rs_decode, rs_encode

    rng = np.random.default_rng(seed)
    out = []

    gf = get_field(8)
    pairs = rng.integers(0, 256, (1000, 2))
    bad = sum(gf.mul(int(a), int(b)) != clmul_mod(int(a), int(b), gf.prim_poly, 8)
              for a, b in pairs)
    out.append(("gf256 multiply vs bitwise oracle", bad == 0, f"{bad} mismatches"))

    y = rng.uniform(0, 8, (10_000, 8))
    agree = int((e8_nearest(y) == brute_nearest(y)).all(axis=1).sum())
    out.append(("nearest point vs box search", agree == len(y), f"{agree}/{len(y)} agree"))

    mv = minimal_vectors()
    table = build_error_table()
    ok = len(mv) == 240 and np.allclose((mv ** 2).sum(axis=1), 2) and len(table) == 120
    out.append(("error table census", ok, f"{len(mv)} vectors, {len(table)} patterns"))

    fails = 0
    for name in RS_PRESETS:
        code = get_rs(name)
        for _ in range(20):
            cw = rs_encode(rng.integers(0, 256, code.k), code)
            r = list(cw)
            for p in rng.choice(code.n, code.t, replace=False):
                r[p] ^= int(rng.integers(1, 256))
            fails += rs_decode(r, code)[0] != cw
    out.append(("RS t-error correction", fails == 0, f"{fails} failures"))

    fails = 0
    for name in BCH_PRESETS:
        code = get_bch(name)
        for _ in range(3):
            cw = bch_encode(rng.integers(0, 2, code.k), code)
            r = cw.copy()
            r[rng.choice(code.n, code.t, replace=False)] ^= 1
            fails += not np.array_equal(bch_decode(r, code), cw)
    out.append(("BCH t-error correction", fails == 0, f"{fails} failures"))

    fails = 0
    for name in RS_PRESETS:
        cfg = frame_config(name)
        bits = rng.integers(0, 2, (10, cfg.k), dtype=np.uint8)
        dec, ok = decode_frames(encode_frames(bits, cfg), cfg)
        fails += int((~ok | (dec != bits).any(axis=1)).sum())
    out.append(("E8+RS noiseless frame round trip", fails == 0, f"{fails} failures"))
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "simulate":
        return cmd_simulate(args, parser)
    if args.command == "rates":
        print(rates_table())
        return 0
    if args.command == "selftest":
        results = selftest(args.seed)
        for name, passed, detail in results:
            print(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")
        return 0 if all(r[1] for r in results) else 1
    if args.command == "table":
        from .lattice import build_error_table
        print(build_error_table().listing())
        return 0
    return 2


if __name__ == "__main__":
    sys.exit(main())
