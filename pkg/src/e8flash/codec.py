"""E8 lattice + outer Reed-Solomon frame encoder and decoder.

A frame of N = 8 n_c cells holds n_c lattice blocks.  The first k_c blocks
are systematic: their information integers carry only data, and their
component-wise LSBs form one RS symbol each.  The remaining blocks carry RS
parity symbols in the LSBs of their integers and data in the bits above.

Information bits are laid out block by block, coordinate by coordinate,
most significant bit first, systematic blocks before parity blocks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .lattice import (DIM, ErrorTable, LatticeSpec, bits_to_symbol,
                      build_error_table, e8_nearest, encode_cube, index_point,
                      lattice_spec, scale_to_cells, symbol_to_bits, unscale)
from .presets import get_rs
from .rs import DecodeFailure, RsCode, rs_correct, rs_encode_batch, rs_syndromes_batch


class WordError(Exception):
    """The frame could not be decoded."""


@dataclass(frozen=True)
class FrameConfig:
    q: int
    rs: RsCode
    lattice: LatticeSpec = field(repr=False, compare=False)
    table: ErrorTable = field(repr=False, compare=False)

    @property
    def V(self) -> int:
        return self.q - 1

    @property
    def n_c(self) -> int:
        return self.rs.n

    @property
    def k_c(self) -> int:
        return self.rs.k

    @property
    def N(self) -> int:
        return DIM * self.rs.n

    @property
    def sys_bits(self) -> int:
        return int(self.lattice.bits.sum())

    @property
    def k(self) -> int:
        return self.k_c * self.sys_bits + (self.n_c - self.k_c) * (self.sys_bits - DIM)

    @property
    def rate(self) -> float:
        return rate(self)


def frame_config(rs: RsCode | str, q: int = 8) -> FrameConfig:
    if isinstance(rs, str):
        rs = get_rs(rs)
    if rs.gf.m != DIM:
        raise ValueError("RS symbols must be GF(2^8) elements, one per block")
    if q < 4:
        # the last coordinate needs an even width to carry an RS bit
        raise ValueError(f"q must be at least 4, got {q}")
    lat = lattice_spec(q)
    return FrameConfig(q, rs, lat, build_error_table(lat))


def rate(cfg: FrameConfig) -> float:
    """Flash rate in bits/cell."""
    log2q = np.log2(cfg.q)
    return (cfg.k_c / cfg.n_c) * log2q + ((cfg.n_c - cfg.k_c) / cfg.n_c) * (log2q - 1)


def _bits_to_ints(bits: np.ndarray, widths: np.ndarray) -> np.ndarray:
    """(..., sum(widths)) bits, MSB first per field -> (..., len(widths)) ints."""
    out = np.zeros(bits.shape[:-1] + (len(widths),), dtype=np.int64)
    pos = 0
    for i, w in enumerate(widths):
        for j in range(w):
            out[..., i] = (out[..., i] << 1) | bits[..., pos + j]
        pos += w
    return out


def _ints_to_bits(ints: np.ndarray, widths: np.ndarray) -> np.ndarray:
    cols = []
    for i, w in enumerate(widths):
        for j in range(w - 1, -1, -1):
            cols.append((ints[..., i] >> j) & 1)
    return np.stack(cols, axis=-1).astype(np.uint8)


def _split(bits: np.ndarray, cfg: FrameConfig) -> tuple[np.ndarray, np.ndarray]:
    B = bits.shape[0]
    nsys = cfg.k_c * cfg.sys_bits
    sys = bits[:, :nsys].reshape(B, cfg.k_c, cfg.sys_bits)
    par = bits[:, nsys:].reshape(B, cfg.n_c - cfg.k_c, cfg.sys_bits - DIM)
    return sys, par


def frame_integers(info_bits: np.ndarray, cfg: FrameConfig) -> np.ndarray:
    """Lattice integers of every block, shape (B, n_c, 8)."""
    bits = np.asarray(info_bits, dtype=np.int64)
    if bits.ndim != 2 or bits.shape[1] != cfg.k:
        raise ValueError(f"expected shape (B, {cfg.k}), got {bits.shape}")
    sys_bits, par_bits = _split(bits, cfg)
    widths = cfg.lattice.bits
    a_sys = _bits_to_ints(sys_bits, widths)
    u = bits_to_symbol(a_sys % 2)
    parity = rs_encode_batch(u, cfg.rs)[:, cfg.k_c:]
    a_par = symbol_to_bits(parity) + 2 * _bits_to_ints(par_bits, widths - 1)
    return np.concatenate([a_sys, a_par], axis=1)


def encode_frames(info_bits: np.ndarray, cfg: FrameConfig) -> np.ndarray:
    """Cell values for a batch of frames, shape (B, N), all in [0, V]."""
    a = frame_integers(info_bits, cfg)
    x, _ = encode_cube(a, cfg.lattice)
    return scale_to_cells(x, cfg.lattice).reshape(len(a), cfg.N)


@dataclass
class Frame:
    info_bits: np.ndarray
    cells: np.ndarray


def encode_frame(info_bits, cfg: FrameConfig) -> Frame:
    bits = np.asarray(info_bits, dtype=np.uint8)
    if bits.shape != (cfg.k,):
        raise ValueError(f"expected {cfg.k} information bits, got {bits.shape}")
    return Frame(bits, encode_frames(bits[None, :], cfg)[0])


def ints_to_info_bits(a: np.ndarray, cfg: FrameConfig) -> np.ndarray:
    """Inverse of the bit layout: (B, n_c, 8) integers -> (B, k) bits."""
    B = a.shape[0]
    widths = cfg.lattice.bits
    sys = _ints_to_bits(a[:, :cfg.k_c], widths).reshape(B, -1)
    par = _ints_to_bits(a[:, cfg.k_c:] >> 1, widths - 1).reshape(B, -1)
    return np.concatenate([sys, par], axis=1)


@dataclass
class DecodeResult:
    info_bits: np.ndarray
    corrected_blocks: list = field(default_factory=list)
    # flagged blocks whose bit pattern is not a minimal-vector pattern
    unresolved_blocks: list = field(default_factory=list)


def _repair_block(a_hat: np.ndarray, y: np.ndarray, pattern: int,
                  cfg: FrameConfig) -> tuple[np.ndarray, bool]:
    """Fix one flagged block given u_hat xor u. Returns (integers, resolved)."""
    e = cfg.table.lookup(pattern)
    w = cfg.lattice.widths
    if e is None:
        return a_hat ^ symbol_to_bits(pattern), False
    cands = np.stack([(a_hat + e) % w, (a_hat - e) % w])
    x, _ = encode_cube(cands, cfg.lattice)
    d = ((x - y) ** 2).sum(axis=1)
    return (cands[0] if d[0] <= d[1] else cands[1]), True


def _decode_one(a_hat: np.ndarray, y: np.ndarray, u_hat: np.ndarray,
                synd, cfg: FrameConfig) -> DecodeResult:
    """RS-correct one frame in place and post-process the flagged blocks."""
    try:
        corrected, positions = rs_correct(list(u_hat), list(synd), cfg.rs)
    except DecodeFailure as exc:
        raise WordError(str(exc)) from exc
    unresolved = []
    for p in positions:
        a_hat[p], ok = _repair_block(a_hat[p], y[p], int(u_hat[p]) ^ corrected[p], cfg)
        if not ok:
            unresolved.append(p)
    return DecodeResult(None, positions, unresolved)


def decode_frames(received: np.ndarray, cfg: FrameConfig) -> tuple[np.ndarray, np.ndarray]:
    """Batch decode. Returns (info bits (B, k), ok (B,)); rows with ok=False
    hit a WordError and their bits are the uncorrected estimate."""
    r = np.asarray(received, dtype=float)
    if r.ndim != 2 or r.shape[1] != cfg.N:
        raise ValueError(f"expected shape (B, {cfg.N}), got {r.shape}")
    B = r.shape[0]
    y = unscale(r, cfg.lattice).reshape(B, cfg.n_c, DIM)
    a_hat = index_point(e8_nearest(y), cfg.lattice)
    u_hat = bits_to_symbol(a_hat % 2)
    synd = rs_syndromes_batch(u_hat, cfg.rs)
    ok = np.ones(B, dtype=bool)
    for f in np.nonzero(synd.any(axis=1))[0]:
        try:
            _decode_one(a_hat[f], y[f], u_hat[f], synd[f], cfg)
        except WordError:
            ok[f] = False
    return ints_to_info_bits(a_hat, cfg), ok


def decode_frame(received, cfg: FrameConfig) -> DecodeResult:
    """Decode one frame of N cell readings; raises WordError on RS failure."""
    r = np.asarray(received, dtype=float)
    if r.shape != (cfg.N,):
        raise ValueError(f"expected {cfg.N} cells, got {r.shape}")
    y = unscale(r, cfg.lattice).reshape(cfg.n_c, DIM)
    a_hat = index_point(e8_nearest(y), cfg.lattice)
    u_hat = bits_to_symbol(a_hat % 2)
    synd = rs_syndromes_batch(u_hat[None, :], cfg.rs)[0]
    if synd.any():
        res = _decode_one(a_hat, y, u_hat, synd, cfg)
    else:
        res = DecodeResult(None)
    res.info_bits = ints_to_info_bits(a_hat[None], cfg)[0]
    return res
