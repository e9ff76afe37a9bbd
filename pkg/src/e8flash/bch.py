"""Systematic shortened narrow-sense binary BCH codes.

Bit ``c[i]`` of a codeword is the coefficient of ``x^(n-1-i)``; the k
information bits come first, followed by the deg(g) parity bits.  Binary
polynomials are held as python ints (bit d = coefficient of x^d).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gf import GF, get_field
from .rs import DecodeFailure, berlekamp_massey, locator_roots


@dataclass(frozen=True)
class BchCode:
    n: int
    k: int
    t: int
    gf: GF = field(repr=False)
    gen: int = field(repr=False)
    parity_matrix: np.ndarray = field(repr=False, compare=False)
    synd_matrix: np.ndarray = field(repr=False, compare=False)

    @property
    def s(self) -> int:
        return self.gf.order - self.n

    @property
    def nparity(self) -> int:
        return self.n - self.k

    @property
    def name(self) -> str:
        return f"bch-{self.n}-{self.k}-{self.t}"


def minimal_poly(gf: GF, e: int) -> int:
    """Minimal polynomial of alpha^e over GF(2), as a bit mask."""
    conj = []
    x = e % gf.order
    while x not in conj:
        conj.append(x)
        x = (2 * x) % gf.order
    poly = [1]  # lowest degree first, GF(2^m) coefficients
    for c in conj:
        root = gf.alpha_pow(c)
        nxt = [0] + poly
        for i, p in enumerate(poly):
            nxt[i] ^= gf.mul(p, root)
        poly = nxt
    if any(c not in (0, 1) for c in poly):
        raise AssertionError("minimal polynomial has non-binary coefficients")
    return sum(1 << i for i, c in enumerate(poly) if c)


def clmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def polymod(a: int, g: int) -> int:
    dg = g.bit_length() - 1
    while a.bit_length() - 1 >= dg:
        a ^= g << (a.bit_length() - 1 - dg)
    return a


def generator_poly(t: int, gf: GF) -> int:
    """lcm of the minimal polynomials of alpha^1 .. alpha^2t."""
    g = 1
    used = []
    for j in range(1, 2 * t + 1):
        mp = minimal_poly(gf, j)
        if mp not in used:
            used.append(mp)
            g = clmul(g, mp)
    return g


def bch_code(t: int, k: int = 4096, gf: GF | None = None) -> BchCode:
    """Shortened BCH code carrying exactly ``k`` information bits.

    The length follows from the realised generator degree: n = k + deg(g).
    """
    gf = gf or get_field(13)
    g = generator_poly(t, gf)
    r = g.bit_length() - 1
    n = k + r
    if n > gf.order:
        raise ValueError(f"k={k}, t={t} does not fit in length {gf.order}")

    # row i: x^(n-1-i) mod g, parity bit j <-> coefficient of x^(r-1-j)
    P = np.zeros((k, r), dtype=np.float32)
    rem = polymod(1 << r, g)
    for i in range(k - 1, -1, -1):
        for j in range(r):
            P[i, j] = (rem >> (r - 1 - j)) & 1
        rem <<= 1
        if rem >> r:
            rem ^= g

    # bits of alpha^(j*deg) for odd j, used to batch syndrome evaluation
    deg = np.arange(n - 1, -1, -1, dtype=np.int64)
    odd = np.arange(1, 2 * t, 2, dtype=np.int64)
    powers = gf.exp_np[(deg[:, None] * odd[None, :]) % gf.order]  # (n, t)
    H = (powers[:, :, None] >> np.arange(gf.m)[None, None, :]) & 1
    H = H.reshape(n, t * gf.m).astype(np.float32)
    return BchCode(n, k, t, gf, g, P, H)


def _bits_to_int(bits) -> int:
    arr = np.asarray(bits, dtype=np.uint8)
    return int.from_bytes(np.packbits(arr).tobytes(), "big") >> ((-len(arr)) % 8)


def _int_to_bits(v: int, width: int) -> np.ndarray:
    nbytes = (width + 7) // 8
    raw = np.frombuffer((v << ((-width) % 8)).to_bytes(nbytes, "big"), dtype=np.uint8)
    return np.unpackbits(raw)[:width]


def bch_encode(info, code: BchCode) -> np.ndarray:
    """Systematic encode: info bits followed by (info(x) x^r) mod g."""
    info = np.asarray(info, dtype=np.uint8)
    if info.shape != (code.k,):
        raise ValueError(f"expected {code.k} information bits, got {info.shape}")
    r = code.nparity
    par = polymod(_bits_to_int(info) << r, code.gen)
    return np.concatenate([info, _int_to_bits(par, r)])


def bch_encode_batch(info: np.ndarray, code: BchCode) -> np.ndarray:
    info = np.asarray(info, dtype=np.uint8)
    if info.ndim != 2 or info.shape[1] != code.k:
        raise ValueError(f"expected shape (B, {code.k}), got {info.shape}")
    par = (info.astype(np.float32) @ code.parity_matrix) % 2
    return np.concatenate([info, par.astype(np.uint8)], axis=1)


def bch_syndromes(received, code: BchCode) -> list[int]:
    """Full syndrome list S_1..S_2t."""
    gf = code.gf
    r = np.asarray(received, dtype=np.uint8)
    degs = (code.n - 1 - np.nonzero(r)[0]).astype(np.int64)
    synd = []
    for j in range(1, 2 * code.t + 1):
        synd.append(int(np.bitwise_xor.reduce(gf.exp_np[(j * degs) % gf.order]))
                    if len(degs) else 0)
    return synd


def bch_syndrome_nonzero(received: np.ndarray, code: BchCode) -> np.ndarray:
    """Boolean mask of rows with any nonzero syndrome; rows are (B, n) bits."""
    s = (np.asarray(received, dtype=np.float32) @ code.synd_matrix) % 2
    return s.any(axis=1)


def bch_decode(received, code: BchCode) -> np.ndarray:
    """Return the corrected codeword, or raise DecodeFailure."""
    r = np.array(received, dtype=np.uint8)
    if r.shape != (code.n,):
        raise ValueError(f"expected {code.n} bits, got {r.shape}")
    synd = bch_syndromes(r, code)
    if not any(synd):
        return r
    gf = code.gf
    lam = berlekamp_massey(synd, gf)
    nerr = len(lam) - 1
    if nerr > code.t:
        raise DecodeFailure(f"locator degree {nerr} exceeds t={code.t}")
    degs = locator_roots(lam, code.n, gf)
    if len(degs) != nerr:
        raise DecodeFailure(f"found {len(degs)} locator roots, expected {nerr}")
    for d in degs:
        r[code.n - 1 - d] ^= 1
    return r
