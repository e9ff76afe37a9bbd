"""SNR gap between the lattice scheme and its PAM counterpart at a target error rate.

Each scheme is swept upward on a fixed grid until its rate falls below the
target; the crossing is found by log-linear interpolation.

    python scripts/gap_at_target.py --coded --pair 2 --target 1e-3
    python scripts/gap_at_target.py --target 1e-4          # uncoded, per symbol
"""

import argparse

from e8flash.presets import PAIRS
from e8flash.sim import SimConfig, interpolate_snr, run_point


def crossing(scheme, preset, start, target, step, seed, min_errors, max_frames):
    pts, snr = [], start
    while True:
        cfg = SimConfig(scheme, (snr,), preset, seed=seed, min_word_errors=min_errors,
                        max_frames=max_frames)
        pts.append(run_point(cfg, snr))
        print(f"  {scheme:12s}{snr:7.2f} dB  {pts[-1].word_errors}/{pts[-1].frames}"
              f"  ({pts[-1].wall_time:.0f}s)", flush=True)
        if pts[-1].wer < target or pts[-1].frames == max_frames:
            break
        snr = round(snr + step, 10)
    return interpolate_snr(pts, target)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--coded", action="store_true")
    p.add_argument("--pair", type=int, default=2, choices=range(1, len(PAIRS) + 1))
    p.add_argument("--target", type=float, default=1e-3)
    p.add_argument("--start", type=float, default=32.0)
    p.add_argument("--step", type=float, default=0.25)
    p.add_argument("--seed", type=int, default=11)
    p.add_argument("--min-errors", type=int, default=100)
    p.add_argument("--max-frames", type=int, default=10_000_000)
    args = p.parse_args(argv)

    rs, bch = list(PAIRS.items())[args.pair - 1]
    schemes = [("e8rs", rs), ("pam-bch", bch)] if args.coded else \
        [("e8-uncoded", None), ("pam-uncoded", None)]
    snrs = [crossing(s, pr, args.start, args.target, args.step, args.seed + i,
                     args.min_errors, args.max_frames) for i, (s, pr) in enumerate(schemes)]
    print(f"{schemes[0][0]}: {snrs[0]:.3f} dB   {schemes[1][0]}: {snrs[1]:.3f} dB   "
          f"gap {snrs[1] - snrs[0]:.3f} dB at {args.target:g}")


if __name__ == "__main__":
    main()
