"""Word error rate of all four schemes over a shared SNR grid, as one CSV.

    python scripts/wer_sweep.py --pair 2 --snr 30:0.5:35 --out sweep.csv

``--pair`` picks the RS/BCH preset pair of matching strength t (1..5).
"""

import argparse
import sys

from e8flash.presets import PAIRS
from e8flash.sim import SimConfig, csv_row, parse_snrs, to_csv, run_wer


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--pair", type=int, default=2, choices=range(1, len(PAIRS) + 1))
    p.add_argument("--snr", type=parse_snrs, default=parse_snrs("30:0.5:35"))
    p.add_argument("--q", type=int, default=8)
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--min-errors", type=int, default=100)
    p.add_argument("--max-frames", type=int, default=1_000_000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", type=argparse.FileType("w"), default=sys.stdout)
    args = p.parse_args(argv)

    rs, bch = list(PAIRS.items())[args.pair - 1]
    runs = [("e8rs", rs), ("pam-bch", bch), ("e8-uncoded", None), ("pam-uncoded", None)]
    args.out.write(to_csv([], header=True))
    for scheme, preset in runs:
        cfg = SimConfig(scheme, args.snr, preset, args.q, args.seed, args.min_errors,
                        args.max_frames, args.workers)
        for pt in run_wer(cfg):
            args.out.write(",".join(csv_row(pt)) + "\n")
            args.out.flush()
            print(f"{scheme:12s}{pt.snr_db:7.2f} dB  {pt.word_errors}/{pt.frames}",
                  file=sys.stderr)


if __name__ == "__main__":
    main()
