"""Post-processing recovery after injecting a scaled minimal vector into one block.

At scale 1 the received block sits exactly on a wrong lattice point, which is
equidistant from the transmitted point and from its mirror image through the
received block. Both share the same LSBs, so whenever the mirror is still a
codebook point the sign choice is a tie. Smaller scales break the tie.

    python scripts/injection_study.py --trials 2000
"""

import argparse

import numpy as np

from e8flash.codec import decode_frames, encode_frames, frame_config
from e8flash.lattice import minimal_vectors


def recovery(cfg, scale, trials, rng, batch=500):
    mv = minimal_vectors()
    good = 0
    for start in range(0, trials, batch):
        n = min(batch, trials - start)
        bits = rng.integers(0, 2, (n, cfg.k), dtype=np.uint8)
        cells = encode_frames(bits, cfg).reshape(n, cfg.n_c, 8)
        blocks = rng.integers(0, cfg.n_c, n)
        cells[np.arange(n), blocks] += scale * cfg.lattice.alpha * mv[rng.integers(0, 240, n)]
        dec, ok = decode_frames(cells.reshape(n, -1), cfg)
        good += int((ok & (dec == bits).all(axis=1)).sum())
    return good / trials


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--preset", default="rs-172-170-1")
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--scales", default="0.55,0.75,0.9,0.99,1.0")
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)
    cfg = frame_config(args.preset)
    rng = np.random.default_rng(args.seed)
    print("scale,recovered_fraction")
    for s in (float(v) for v in args.scales.split(",")):
        print(f"{s:g},{recovery(cfg, s, args.trials, rng):.4f}", flush=True)


if __name__ == "__main__":
    main()
