"""Arithmetic in GF(2^m) using log/antilog tables."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# x^8 + x^4 + x^3 + x^2 + 1
PRIM_POLY_8 = 0x11D
# x^13 + x^4 + x^3 + x + 1
PRIM_POLY_13 = 0x201B


class FieldError(ValueError):
    pass


@dataclass(frozen=True)
class GF:
    """GF(2^m) with generator alpha = x.

    ``exp`` is doubled in length so that ``exp[log[a] + log[b]]`` never needs
    a modulo.  Scalar methods use the python lists, batch code uses the numpy
    copies ``exp_np`` / ``log_np``.
    """

    m: int
    prim_poly: int
    exp: list = field(repr=False, compare=False)
    log: list = field(repr=False, compare=False)
    exp_np: np.ndarray = field(repr=False, compare=False)
    log_np: np.ndarray = field(repr=False, compare=False)

    @property
    def size(self) -> int:
        return 1 << self.m

    @property
    def order(self) -> int:
        """Multiplicative group order, 2^m - 1."""
        return (1 << self.m) - 1

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero in GF(2^m)")
        if a == 0:
            return 0
        return self.exp[self.log[a] - self.log[b] + self.order]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.exp[self.order - self.log[a]]

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            return 1 if n == 0 else 0
        return self.exp[(self.log[a] * n) % self.order]

    def alpha_pow(self, n: int) -> int:
        return self.exp[n % self.order]

    def poly_eval(self, coeffs, x: int) -> int:
        """Evaluate a polynomial given lowest-degree-first coefficients (Horner)."""
        acc = 0
        for c in reversed(coeffs):
            acc = self.mul(acc, x) ^ c
        return acc


def field_build(m: int, prim_poly: int) -> GF:
    """Build the tables for GF(2^m) defined by ``prim_poly`` (bit mask incl. x^m).

    Raises FieldError if the polynomial is not of degree m or x does not have
    order 2^m - 1 modulo it.
    """
    if not 1 <= m <= 16:
        raise FieldError(f"extension degree must be in 1..16, got {m}")
    if prim_poly >> m != 1:
        raise FieldError(f"polynomial {prim_poly:#x} does not have degree {m}")
    order = (1 << m) - 1
    exp = [0] * (2 * order)
    log = [0] * (1 << m)
    seen = [False] * (1 << m)
    v = 1
    for i in range(order):
        if seen[v]:
            raise FieldError(
                f"{prim_poly:#x} is not primitive: x has order {i} < {order}")
        seen[v] = True
        exp[i] = v
        log[v] = i
        v <<= 1
        if v >> m:
            v ^= prim_poly
    if v != 1:
        raise FieldError(f"{prim_poly:#x} is not primitive")
    exp[order:] = exp[:order]
    return GF(m, prim_poly, exp, log,
              np.array(exp, dtype=np.int64), np.array(log, dtype=np.int64))


def clmul_mod(a: int, b: int, prim_poly: int, m: int) -> int:
    """Carry-less product of a and b reduced modulo prim_poly, bit by bit.

    Table-free reference used to cross-check ``GF.mul``.
    """
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> m:
            a ^= prim_poly
    return r


_CACHE: dict = {}


def get_field(m: int, prim_poly: int | None = None) -> GF:
    if prim_poly is None:
        prim_poly = {8: PRIM_POLY_8, 13: PRIM_POLY_13}[m]
    key = (m, prim_poly)
    if key not in _CACHE:
        _CACHE[key] = field_build(m, prim_poly)
    return _CACHE[key]
