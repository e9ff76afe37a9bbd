"""Conventional baseline: BCH codeword bits Gray-mapped onto q-level PAM cells."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bch import BchCode, DecodeFailure, bch_decode, bch_encode_batch, bch_syndrome_nonzero
from .codec import WordError
from .presets import get_bch


def gray_encode(level):
    level = np.asarray(level)
    return level ^ (level >> 1)


def gray_decode(code, nbits: int):
    code = np.asarray(code).copy()
    level = code.copy()
    shift = 1
    while shift < nbits:
        level ^= code >> shift
        shift += 1
    return level


@dataclass(frozen=True)
class BaselineConfig:
    q: int
    bch: BchCode

    @property
    def V(self) -> int:
        return self.q - 1

    @property
    def bits_per_cell(self) -> int:
        return int(np.log2(self.q))

    @property
    def cells(self) -> int:
        return -(-self.bch.n // self.bits_per_cell)

    @property
    def k(self) -> int:
        return self.bch.k

    @property
    def rate(self) -> float:
        """Information bits per cell as k log2(q) / n (no padding charge)."""
        return self.bch.k * self.bits_per_cell / self.bch.n

    @property
    def level_of_label(self) -> np.ndarray:
        """Gray label (bits read MSB first) -> PAM level."""
        return gray_decode(np.arange(self.q), self.bits_per_cell)

    @property
    def label_of_level(self) -> np.ndarray:
        return gray_encode(np.arange(self.q))


def baseline_config(bch: BchCode | str, q: int = 8) -> BaselineConfig:
    if isinstance(bch, str):
        bch = get_bch(bch)
    if q < 2 or q & (q - 1):
        raise ValueError(f"q must be a power of two, got {q}")
    return BaselineConfig(q, bch)


def _pad(bits: np.ndarray, cfg: BaselineConfig) -> np.ndarray:
    pad = cfg.cells * cfg.bits_per_cell - bits.shape[1]
    return np.pad(bits, ((0, 0), (0, pad)))


def baseline_encode_batch(info: np.ndarray, cfg: BaselineConfig) -> np.ndarray:
    cw = _pad(bch_encode_batch(info, cfg.bch), cfg).astype(np.int64)
    m = cfg.bits_per_cell
    groups = cw.reshape(len(cw), cfg.cells, m)
    labels = groups @ (1 << np.arange(m - 1, -1, -1))
    return cfg.level_of_label[labels].astype(float)


def baseline_encode(info, cfg: BaselineConfig) -> np.ndarray:
    info = np.asarray(info, dtype=np.uint8)
    if info.shape != (cfg.k,):
        raise ValueError(f"expected {cfg.k} information bits, got {info.shape}")
    return baseline_encode_batch(info[None, :], cfg)[0]


def hard_bits(received: np.ndarray, cfg: BaselineConfig) -> np.ndarray:
    """Nearest level (clamped) -> Gray label bits, truncated to n."""
    r = np.asarray(received, dtype=float)
    levels = np.clip(np.rint(r), 0, cfg.V).astype(np.int64)
    labels = cfg.label_of_level[levels]
    m = cfg.bits_per_cell
    bits = (labels[..., None] >> np.arange(m - 1, -1, -1)) & 1
    return bits.reshape(r.shape[:-1] + (-1,))[..., :cfg.bch.n].astype(np.uint8)


def baseline_decode_batch(received: np.ndarray, cfg: BaselineConfig) -> tuple[np.ndarray, np.ndarray]:
    """Returns (info bits (B, k), ok (B,))."""
    r = np.asarray(received, dtype=float)
    if r.ndim != 2 or r.shape[1] != cfg.cells:
        raise ValueError(f"expected shape (B, {cfg.cells}), got {r.shape}")
    cw = hard_bits(r, cfg)
    ok = np.ones(len(cw), dtype=bool)
    for f in np.nonzero(bch_syndrome_nonzero(cw, cfg.bch))[0]:
        try:
            cw[f] = bch_decode(cw[f], cfg.bch)
        except DecodeFailure:
            ok[f] = False
    return cw[:, :cfg.k], ok


def baseline_decode(received, cfg: BaselineConfig) -> np.ndarray:
    r = np.asarray(received, dtype=float)
    if r.shape != (cfg.cells,):
        raise ValueError(f"expected {cfg.cells} cells, got {r.shape}")
    try:
        cw = bch_decode(hard_bits(r, cfg), cfg.bch)
    except DecodeFailure as exc:
        raise WordError(str(exc)) from exc
    return cw[:cfg.k]
