"""Systematic shortened Reed-Solomon codes over GF(2^m).

Codewords are sequences of field elements ``c[0..n-1]`` with ``c[i]`` the
coefficient of ``x^(n-1-i)``; information symbols come first.  Shortening
by ``s`` is implicit: the dropped leading symbols are zero, so every
shortened codeword zero-extended on the left is a codeword of the parent
length-(2^m - 1) code.  Generator roots are alpha^1 .. alpha^2t.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gf import GF, get_field


class DecodeFailure(Exception):
    """The received word is detectably uncorrectable."""


@dataclass(frozen=True)
class RsCode:
    n: int
    k: int
    t: int
    gf: GF = field(repr=False)
    gen: tuple = field(repr=False, compare=False)  # monic, highest degree first

    @property
    def s(self) -> int:
        return self.gf.order - self.n

    @property
    def nparity(self) -> int:
        return self.n - self.k

    @property
    def name(self) -> str:
        return f"rs-{self.n}-{self.k}-{self.t}"


def rs_code(n: int, k: int, t: int, gf: GF | None = None) -> RsCode:
    gf = gf or get_field(8)
    if n - k != 2 * t or t < 1:
        raise ValueError(f"need n - k = 2t with t >= 1, got ({n},{k},{t})")
    if not 0 < k < n <= gf.order:
        raise ValueError(f"invalid length ({n},{k}) for GF(2^{gf.m})")
    g = [1]
    for j in range(1, 2 * t + 1):
        root = gf.alpha_pow(j)
        # multiply by (x + root), highest degree first
        nxt = g + [0]
        for i in range(1, len(nxt)):
            nxt[i] ^= gf.mul(g[i - 1], root)
        g = nxt
    return RsCode(n, k, t, gf, tuple(g))


def rs_encode(info, code: RsCode) -> list[int]:
    """Systematic encoding: info followed by the remainder of info*x^2t mod g."""
    info = [int(v) for v in info]
    if len(info) != code.k:
        raise ValueError(f"expected {code.k} information symbols, got {len(info)}")
    gf = code.gf
    g = code.gen
    npar = code.nparity
    reg = [0] * npar
    for c in info:
        fb = c ^ reg[0]
        reg = reg[1:] + [0]
        if fb:
            lf = gf.log[fb]
            for j in range(npar):
                if g[j + 1]:
                    reg[j] ^= gf.exp[lf + gf.log[g[j + 1]]]
    return info + reg


def rs_encode_batch(info: np.ndarray, code: RsCode) -> np.ndarray:
    """Vectorised ``rs_encode`` over the rows of ``info`` (shape (B, k))."""
    info = np.asarray(info, dtype=np.int64)
    if info.ndim != 2 or info.shape[1] != code.k:
        raise ValueError(f"expected shape (B, {code.k}), got {info.shape}")
    gf = code.gf
    npar = code.nparity
    glog = np.array([gf.log[c] for c in code.gen[1:]], dtype=np.int64)
    gnz = np.array([c != 0 for c in code.gen[1:]])
    reg = np.zeros((info.shape[0], npar), dtype=np.int64)
    for i in range(code.k):
        fb = info[:, i] ^ reg[:, 0]
        reg[:, :-1] = reg[:, 1:]
        reg[:, -1] = 0
        nz = fb != 0
        prod = gf.exp_np[gf.log_np[fb][:, None] + glog[None, :]]
        reg ^= np.where(nz[:, None] & gnz[None, :], prod, 0)
    return np.concatenate([info, reg], axis=1)


def rs_syndromes(received, code: RsCode) -> list[int]:
    """S_j = r(alpha^j) for j = 1..2t."""
    gf = code.gf
    out = []
    for j in range(1, 2 * code.t + 1):
        out.append(gf.poly_eval(list(reversed(received)), gf.alpha_pow(j)))
    return out


def rs_syndromes_batch(received: np.ndarray, code: RsCode) -> np.ndarray:
    """Syndromes for each row of ``received`` (B, n) -> (B, 2t)."""
    gf = code.gf
    r = np.asarray(received, dtype=np.int64)
    nz = r != 0
    lr = gf.log_np[r]
    deg = np.arange(code.n - 1, -1, -1, dtype=np.int64)
    out = np.empty((r.shape[0], 2 * code.t), dtype=np.int64)
    for j in range(1, 2 * code.t + 1):
        terms = gf.exp_np[(lr + j * deg) % gf.order]
        out[:, j - 1] = np.bitwise_xor.reduce(np.where(nz, terms, 0), axis=1)
    return out


def berlekamp_massey(synd, gf: GF) -> list[int]:
    """Error-locator polynomial (lowest degree first) from S_1..S_2t."""
    lam = [1]
    prev = [1]
    L = 0
    shift = 1
    b = 1
    for r, s_r in enumerate(synd):
        d = s_r
        for i in range(1, L + 1):
            if i < len(lam) and lam[i]:
                d ^= gf.mul(lam[i], synd[r - i])
        if d == 0:
            shift += 1
            continue
        coef = gf.div(d, b)
        nxt = lam + [0] * max(0, len(prev) + shift - len(lam))
        for i, p in enumerate(prev):
            if p:
                nxt[i + shift] ^= gf.mul(coef, p)
        if 2 * L <= r:
            prev, L, b, shift = lam, r + 1 - L, d, 1
        else:
            shift += 1
        lam = nxt
    while len(lam) > 1 and lam[-1] == 0:
        lam.pop()
    if len(lam) - 1 != L:
        raise DecodeFailure("inconsistent error-locator degree")
    return lam


def locator_roots(lam, n: int, gf: GF) -> list[int]:
    """Degrees d in [0, n) with lam(alpha^-d) = 0 (exhaustive search)."""
    d = np.arange(n, dtype=np.int64)
    acc = np.zeros(n, dtype=np.int64)
    for i, c in enumerate(lam):
        if c:
            acc ^= gf.exp_np[(gf.log[c] - i * d) % gf.order]
    return [int(v) for v in np.nonzero(acc == 0)[0]]


def rs_decode(received, code: RsCode) -> tuple[list[int], list[int]]:
    """Bounded-distance decode. Returns (corrected codeword, error indices).

    Raises DecodeFailure when the locator is inconsistent with at most t
    errors inside the (shortened) codeword.
    """
    r = [int(v) for v in received]
    if len(r) != code.n:
        raise ValueError(f"expected {code.n} symbols, got {len(r)}")
    synd = rs_syndromes(r, code)
    if not any(synd):
        return r, []
    return rs_correct(r, synd, code)


def rs_correct(r: list[int], synd, code: RsCode) -> tuple[list[int], list[int]]:
    gf = code.gf
    lam = berlekamp_massey(synd, gf)
    nerr = len(lam) - 1
    if nerr > code.t:
        raise DecodeFailure(f"locator degree {nerr} exceeds t={code.t}")
    degs = locator_roots(lam, code.n, gf)
    if len(degs) != nerr:
        raise DecodeFailure(f"found {len(degs)} locator roots, expected {nerr}")
    # Omega = S(x) Lambda(x) mod x^2t, S(x) = S_1 + S_2 x + ...
    two_t = 2 * code.t
    omega = [0] * two_t
    for i, li in enumerate(lam):
        if li:
            for j in range(two_t - i):
                omega[i + j] ^= gf.mul(li, synd[j])
    dlam = [lam[i] if i % 2 == 1 else 0 for i in range(1, len(lam))]
    positions = []
    for d in degs:
        xinv = gf.alpha_pow(-d)
        num = gf.poly_eval(omega, xinv)
        den = gf.poly_eval(dlam, xinv)
        if den == 0:
            raise DecodeFailure("zero locator derivative")
        idx = code.n - 1 - d
        r[idx] ^= gf.div(num, den)
        positions.append(idx)
    return r, sorted(positions)
