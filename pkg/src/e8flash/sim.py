"""AWGN channel and Monte-Carlo word-error-rate harness.

Trials are grouped into fixed-size chunks.  The random stream of a chunk is
derived from (seed, SNR, chunk index) only, so results do not depend on how
many worker processes evaluate the chunks.
"""

from __future__ import annotations

import csv
import io
import math
import struct
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .baseline import baseline_config, baseline_decode_batch, baseline_encode_batch
from .codec import decode_frames, encode_frames, frame_config
from .lattice import e8_nearest, encode_cube, index_point, lattice_spec, scale_to_cells, unscale
from .presets import BCH_PRESETS, RS_PRESETS

SCHEMES = ("e8rs", "pam-bch", "e8-uncoded", "pam-uncoded")
CHUNK = {"e8rs": 250, "pam-bch": 250, "e8-uncoded": 20000, "pam-uncoded": 50000}
CSV_COLUMNS = ("scheme", "preset", "q", "rate_bits_per_cell", "snr_db",
               "frames", "word_errors", "wer", "ci95_halfwidth")


def sigma_for_snr(snr_db: float, V: float) -> float:
    """Noise deviation giving peak SNR V^2 / sigma^2 = snr_db."""
    return V / 10 ** (snr_db / 20)


def awgn(x, sigma: float, rng: np.random.Generator) -> np.ndarray:
    if sigma < 0:
        raise ValueError("sigma must be non-negative")
    x = np.asarray(x, dtype=float)
    if sigma == 0:
        return x.copy()
    return x + rng.normal(0.0, sigma, size=x.shape)


@dataclass(frozen=True)
class SimConfig:
    scheme: str
    snrs: tuple
    preset: str | None = None
    q: int = 8
    seed: int = 0
    min_word_errors: int = 100
    max_frames: int = 10_000_000
    workers: int = 1

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}; choose from {SCHEMES}")
        if not self.snrs:
            raise ValueError("SNR list is empty")
        if self.max_frames < 1:
            raise ValueError("max_frames must be >= 1")
        if self.scheme == "e8rs" and self.preset not in RS_PRESETS:
            raise ValueError(f"e8rs needs an RS preset, got {self.preset!r}")
        if self.scheme == "pam-bch" and self.preset not in BCH_PRESETS:
            raise ValueError(f"pam-bch needs a BCH preset, got {self.preset!r}")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass
class SimPoint:
    scheme: str
    preset: str
    q: int
    rate: float
    snr_db: float
    frames: int
    word_errors: int
    wall_time: float = field(default=0.0, compare=False)

    @property
    def wer(self) -> float:
        return self.word_errors / self.frames

    @property
    def ci95(self) -> float:
        p = self.wer
        return 1.96 * math.sqrt(p * (1 - p) / self.frames)


@lru_cache(maxsize=None)
def _setup(scheme: str, preset: str | None, q: int):
    if scheme == "e8rs":
        return frame_config(preset, q)
    if scheme == "pam-bch":
        return baseline_config(preset, q)
    if scheme == "e8-uncoded":
        return lattice_spec(q)
    return None


def scheme_rate(scheme: str, preset: str | None, q: int) -> float:
    cfg = _setup(scheme, preset, q)
    if cfg is None or scheme == "e8-uncoded":
        return math.log2(q)
    return cfg.rate


def _chunk_rng(seed: int, snr_db: float, chunk: int) -> np.random.Generator:
    snr_key = int.from_bytes(struct.pack("<d", float(snr_db)), "little")
    return np.random.default_rng(np.random.SeedSequence([seed, snr_key, chunk]))


def run_chunk(scheme: str, preset: str | None, q: int, snr_db: float,
              seed: int, chunk: int, size: int) -> int:
    """Simulate ``size`` trials of one chunk; return the number of word errors."""
    rng = _chunk_rng(seed, snr_db, chunk)
    cfg = _setup(scheme, preset, q)
    sigma = sigma_for_snr(snr_db, q - 1)
    if scheme == "e8rs":
        bits = rng.integers(0, 2, (size, cfg.k), dtype=np.uint8)
        y = awgn(encode_frames(bits, cfg), sigma, rng)
        dec, ok = decode_frames(y, cfg)
        return int((~ok | (dec != bits).any(axis=1)).sum())
    if scheme == "pam-bch":
        bits = rng.integers(0, 2, (size, cfg.k), dtype=np.uint8)
        y = awgn(baseline_encode_batch(bits, cfg), sigma, rng)
        dec, ok = baseline_decode_batch(y, cfg)
        return int((~ok | (dec != bits).any(axis=1)).sum())
    if scheme == "e8-uncoded":
        a = rng.integers(0, cfg.widths, (size, 8))
        x, _ = encode_cube(a, cfg)
        y = unscale(awgn(scale_to_cells(x, cfg), sigma, rng), cfg)
        return int((index_point(e8_nearest(y), cfg) != a).any(axis=1).sum())
    levels = rng.integers(0, q, size)
    y = awgn(levels.astype(float), sigma, rng)
    return int((np.clip(np.rint(y), 0, q - 1) != levels).sum())


def _chunk_sizes(scheme: str, max_frames: int):
    c = CHUNK[scheme]
    for i in range(-(-max_frames // c)):
        yield i, min(c, max_frames - i * c)


def run_point(sim: SimConfig, snr_db: float, pool: ProcessPoolExecutor | None = None) -> SimPoint:
    t0 = time.perf_counter()
    frames = errors = 0
    chunks = _chunk_sizes(sim.scheme, sim.max_frames)
    done = False
    while not done:
        wave = [c for _, c in zip(range(max(sim.workers, 1)), chunks)]
        if not wave:
            break
        args = [(sim.scheme, sim.preset, sim.q, snr_db, sim.seed, i, n) for i, n in wave]
        if pool is None:
            counts = [run_chunk(*a) for a in args]
        else:
            counts = list(pool.map(run_chunk, *zip(*args)))
        # consume in chunk order so the stopping point is worker independent
        for (_, n), e in zip(wave, counts):
            frames += n
            errors += e
            if errors >= sim.min_word_errors or frames >= sim.max_frames:
                done = True
                break
    return SimPoint(sim.scheme, sim.preset or "uncoded", sim.q,
                    scheme_rate(sim.scheme, sim.preset, sim.q), snr_db,
                    frames, errors, time.perf_counter() - t0)


def run_wer(sim: SimConfig, progress=None) -> list[SimPoint]:
    """Run every SNR point of ``sim``; ``progress`` is called with each point."""
    results = []
    if sim.workers > 1:
        with ProcessPoolExecutor(sim.workers) as pool:
            for snr in sim.snrs:
                results.append(run_point(sim, snr, pool))
                if progress:
                    progress(results[-1])
    else:
        for snr in sim.snrs:
            results.append(run_point(sim, snr))
            if progress:
                progress(results[-1])
    return results


def csv_row(p: SimPoint) -> list[str]:
    return [p.scheme, p.preset, str(p.q), f"{p.rate:.6f}", f"{p.snr_db:.4f}",
            str(p.frames), str(p.word_errors), f"{p.wer:.6e}", f"{p.ci95:.6e}"]


def to_csv(points, header: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow(CSV_COLUMNS)
    for p in points:
        w.writerow(csv_row(p))
    return buf.getvalue()


def parse_snrs(text: str) -> tuple:
    """'start:step:end' (inclusive), a comma list, or a single value, in dB."""
    if ":" in text:
        parts = [float(v) for v in text.split(":")]
        if len(parts) != 3:
            raise ValueError(f"SNR range must be start:step:end, got {text!r}")
        start, step, end = parts
        if step <= 0 or end < start:
            raise ValueError(f"empty SNR range {text!r}")
        n = int(math.floor((end - start) / step + 1e-9)) + 1
        return tuple(round(start + i * step, 10) for i in range(n))
    return tuple(float(v) for v in text.split(",") if v.strip())


def interpolate_snr(points, target: float) -> float:
    """SNR where log(WER) crosses ``target``, by linear interpolation between
    the bracketing points of a sweep sorted by SNR."""
    pts = sorted(points, key=lambda p: p.snr_db)
    for lo, hi in zip(pts, pts[1:]):
        if lo.wer >= target > hi.wer:
            if hi.wer == 0:
                return hi.snr_db
            f = (math.log(lo.wer) - math.log(target)) / (math.log(lo.wer) - math.log(hi.wer))
            return lo.snr_db + f * (hi.snr_db - lo.snr_db)
    raise ValueError(f"WER {target} is not bracketed by the sweep")
