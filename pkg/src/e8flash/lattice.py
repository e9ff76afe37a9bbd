"""E8 lattice: cube-shaped encoding, indexing, nearest-point decoding.

Lattice points have integer or half-integer coordinates.  Encoding and
indexing work on doubled coordinates (``x2 = 2 x``) held as integers, so
round trips are exact; only noisy observations are floating point.  All
functions accept arrays with any number of leading batch dimensions and a
trailing dimension of 8.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np

DIM = 8

# generator matrix, lower triangular, x = G b
G = np.array([
    [0.5, 0, 0, 0, 0, 0, 0, 0],
    [0.5, 1, 0, 0, 0, 0, 0, 0],
    [0.5, -1, 1, 0, 0, 0, 0, 0],
    [0.5, 0, -1, 1, 0, 0, 0, 0],
    [0.5, 0, 0, -1, 1, 0, 0, 0],
    [0.5, 0, 0, 0, -1, 1, 0, 0],
    [0.5, 0, 0, 0, 0, -1, 1, 0],
    [0.5, 0, 0, 0, 0, 0, -1, 2],
])
G2 = (2 * G).astype(np.int64)
G_INV = np.linalg.inv(G)


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class LatticeSpec:
    """Cube-shaped E8 codebook for q-level cells.

    ``M = q`` is the cube bound for the unscaled lattice and ``alpha``
    maps the largest codebook coordinate, q - 1/2, onto the peak cell value
    ``V = q - 1``.
    """

    q: int
    widths: np.ndarray = field(repr=False, compare=False)  # M / g_ii

    @property
    def V(self) -> int:
        return self.q - 1

    @property
    def M(self) -> int:
        return self.q

    @property
    def alpha(self) -> float:
        return self.V / (self.V + 0.5)

    @property
    def diag(self) -> np.ndarray:
        return np.diag(G)

    @property
    def bits(self) -> np.ndarray:
        """Bits carried by each information integer."""
        return np.log2(self.widths).astype(int)


def lattice_spec(q: int) -> LatticeSpec:
    if q < 2 or q & (q - 1):
        raise LatticeError(f"q must be a power of two >= 2, got {q}")
    w = np.array([2 * q] + [q] * 6 + [q // 2], dtype=np.int64)
    return LatticeSpec(q, w)


def encode_cube(a, spec: LatticeSpec) -> tuple[np.ndarray, np.ndarray]:
    """Map information integers to the codebook point inside [0, M)^8.

    Returns ``(x, b)`` with ``x = G b`` and ``b_i = a_i + (M/g_ii) k_i``;
    the wrap counts k_i are found row by row from the triangular structure.
    """
    a = np.asarray(a, dtype=np.int64)
    if a.shape[-1] != DIM:
        raise LatticeError(f"trailing dimension must be {DIM}, got {a.shape}")
    if (a < 0).any() or (a >= spec.widths).any():
        raise LatticeError("information integers out of range")
    two_m = 2 * spec.M
    b = np.empty_like(a)
    x2 = np.empty_like(a)
    for i in range(DIM):
        partial = b[..., :i] @ G2[i, :i] if i else np.zeros(a.shape[:-1], np.int64)
        # k_i = ceil((-sum_j g_ij b_j - g_ii a_i) / M), doubled units
        k = -np.floor_divide(partial + G2[i, i] * a[..., i], two_m)
        b[..., i] = a[..., i] + spec.widths[i] * k
        x2[..., i] = partial + G2[i, i] * b[..., i]
    return x2 / 2.0, b


def lattice_coeffs(x, tol: float = 1e-9) -> np.ndarray:
    """Integer coefficients b = G^-1 x; rejects non-lattice input."""
    x2f = 2.0 * np.asarray(x, dtype=float)
    if x2f.shape[-1] != DIM:
        raise LatticeError(f"trailing dimension must be {DIM}, got {x2f.shape}")
    x2 = np.rint(x2f)
    if (np.abs(x2f - x2) > 2 * tol).any():
        raise LatticeError("coordinates are not multiples of 1/2")
    x2 = x2.astype(np.int64)
    b = np.empty_like(x2)
    for i in range(DIM):
        partial = b[..., :i] @ G2[i, :i] if i else 0
        num = x2[..., i] - partial
        if (num % G2[i, i]).any():
            raise LatticeError("point is not in the E8 lattice")
        b[..., i] = num // G2[i, i]
    return b


def index_point(x, spec: LatticeSpec) -> np.ndarray:
    """Information integers of a lattice point: a_i = b_i mod (M/g_ii)."""
    return lattice_coeffs(x) % spec.widths


def _d8_nearest(y: np.ndarray) -> np.ndarray:
    f = np.rint(y)
    odd = (f.sum(axis=-1) % 2) != 0
    if odd.any():
        dev = y - f
        # argmax picks the lowest index among equally unreliable coordinates
        worst = np.argmax(np.abs(dev), axis=-1)
        step = np.where(np.take_along_axis(dev, worst[..., None], -1) >= 0, 1.0, -1.0)
        fixed = f.copy()
        np.put_along_axis(fixed, worst[..., None],
                          np.take_along_axis(f, worst[..., None], -1) + step, -1)
        f = np.where(odd[..., None], fixed, f)
    return f


def e8_nearest(y) -> np.ndarray:
    """Closest E8 point: the better of the D8 and D8 + 1/2 candidates.

    Ties between the two cosets go to the integer (D8) candidate.  The result
    is not restricted to the codebook cube.
    """
    y = np.asarray(y, dtype=float)
    c0 = _d8_nearest(y)
    c1 = _d8_nearest(y - 0.5) + 0.5
    d0 = ((y - c0) ** 2).sum(axis=-1)
    d1 = ((y - c1) ** 2).sum(axis=-1)
    return np.where((d0 <= d1)[..., None], c0, c1)


def minimal_vectors() -> np.ndarray:
    """The 240 vectors of squared norm 2, as a (240, 8) array."""
    vecs = []
    for i, j in combinations(range(DIM), 2):
        for si, sj in product((1.0, -1.0), repeat=2):
            v = np.zeros(DIM)
            v[i], v[j] = si, sj
            vecs.append(v)
    for signs in product((0.5, -0.5), repeat=DIM):
        if sum(s < 0 for s in signs) % 2 == 0:
            vecs.append(np.array(signs))
    return np.array(vecs)


def scale_to_cells(x, spec: LatticeSpec) -> np.ndarray:
    return spec.alpha * np.asarray(x, dtype=float)


def unscale(y, spec: LatticeSpec) -> np.ndarray:
    return np.asarray(y, dtype=float) / spec.alpha


def bits_to_symbol(bits) -> np.ndarray:
    """Pack 8 bits (first bit least significant) into a GF(2^8) element."""
    bits = np.asarray(bits, dtype=np.int64)
    return (bits << np.arange(DIM)).sum(axis=-1)


def symbol_to_bits(sym) -> np.ndarray:
    sym = np.asarray(sym, dtype=np.int64)
    return (sym[..., None] >> np.arange(DIM)) & 1


@dataclass(frozen=True)
class ErrorTable:
    """Bit pattern (u_hat xor u, packed as a symbol) -> integer error vector.

    ``rows`` keeps all 240 (dx, db, pattern) triples for listing; ``errors``
    holds one canonical representative per +/- pair, indexed by symbol,
    with ``known`` marking the 120 populated entries.
    """

    rows: tuple = field(repr=False)
    errors: np.ndarray = field(repr=False)
    known: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return int(self.known.sum())

    def lookup(self, pattern: int) -> np.ndarray | None:
        if not self.known[pattern]:
            return None
        return self.errors[pattern].copy()

    def listing(self) -> str:
        def fmt(v):
            return " ".join(f"{x:>5g}" for x in v)

        lines = [f"{'x_hat - x':^47} | {'a_hat - a':^47} | u_hat xor u"]
        for dx, db, pat in self.rows:
            lines.append(f"{fmt(dx)} | {fmt(db)} | {' '.join(str(p) for p in pat)}")
        return "\n".join(lines)


def build_error_table(spec: LatticeSpec | None = None) -> ErrorTable:
    """Tabulate the error patterns of the 240 minimal vectors.

    The canonical member of each pair is the one whose first nonzero
    coefficient is negative.  ``spec`` is accepted for symmetry with the
    other constructors; the table depends only on G.
    """
    rows = []
    errors = np.zeros((256, DIM), dtype=np.int64)
    known = np.zeros(256, dtype=bool)
    for dx in minimal_vectors():
        db = lattice_coeffs(dx)
        pat = np.abs(db) % 2
        rows.append((tuple(dx), tuple(int(v) for v in db), tuple(int(v) for v in pat)))
        sym = int(bits_to_symbol(pat))
        if sym == 0:
            raise LatticeError(f"minimal vector {dx} has an all-zero bit pattern")
        if db[np.nonzero(db)[0][0]] > 0:
            db = -db
        if known[sym]:
            if not np.array_equal(errors[sym], db):
                raise LatticeError(f"bit pattern {pat} is not unique")
            continue
        errors[sym] = db
        known[sym] = True
    if known.sum() != 120:
        raise LatticeError(f"expected 120 patterns, got {known.sum()}")
    return ErrorTable(tuple(rows), errors, known)
