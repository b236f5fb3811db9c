"""Truncated power series in t with LPoly coefficients.

Builds the virtual generating series

    Z_{r,d}(t) = sum_n L^{-N_n/2} [ncQuot^n_{r,d}] (L^{(r-1)/2} t)^n,

Reineke's series at q = L, and the residuals of the two functional equations

    Z_{1,d}(t) = 1 + L^{d/2} t prod_{i<d} Z_{1,d}(L^i t)
    Z_{r,d}(t) = prod_{i<r} Z_{1,d}(L^i t).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .laurent import LPoly, from_json_obj, to_json_obj
from .motives import MotiveCache, dimension, ncquot_motive

ZERO = LPoly()
ONE = LPoly.const(1)


class OrderMismatch(ValueError):
    pass


@dataclass(frozen=True)
class TruncSeries:
    """sum_{n<=order} coeffs[n] t^n; terms beyond ``order`` are unknown, not zero."""

    order: int
    coeffs: tuple[LPoly, ...]

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be nonnegative")
        if len(self.coeffs) != self.order + 1:
            raise ValueError(f"expected {self.order + 1} coefficients, got {len(self.coeffs)}")

    @classmethod
    def from_list(cls, coeffs: Sequence[LPoly | int], order: int | None = None) -> TruncSeries:
        coeffs = [c if isinstance(c, LPoly) else LPoly.const(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        coeffs = (coeffs + [ZERO] * (order + 1))[: order + 1]
        return cls(order, tuple(coeffs))

    @classmethod
    def one(cls, order: int) -> TruncSeries:
        return cls.from_list([ONE], order)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def first_nonzero(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return i
        return None

    def _check(self, other: TruncSeries) -> None:
        if self.order != other.order:
            raise OrderMismatch(f"orders differ: {self.order} vs {other.order}")

    def __add__(self, other: TruncSeries) -> TruncSeries:
        self._check(other)
        return TruncSeries(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: TruncSeries) -> TruncSeries:
        self._check(other)
        return TruncSeries(self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: TruncSeries) -> TruncSeries:
        return ts_mul(self, other)

    def scale_coeffs(self, c: LPoly) -> TruncSeries:
        return TruncSeries(self.order, tuple(c * a for a in self.coeffs))

    def mul_t(self) -> TruncSeries:
        """Multiply by t, dropping the term that falls past ``order``."""
        return TruncSeries(self.order, (ZERO,) + self.coeffs[:-1])

    def to_json_obj(self) -> dict:
        return {"order": self.order, "coeffs": [to_json_obj(c) for c in self.coeffs]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> TruncSeries:
        return cls(int(obj["order"]), tuple(from_json_obj(c) for c in obj["coeffs"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json_obj())


def ts_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    a._check(b)
    T = a.order
    out = []
    for n in range(T + 1):
        acc = ZERO
        for i in range(n + 1):
            x, y = a.coeffs[i], b.coeffs[n - i]
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return TruncSeries(T, tuple(out))


def ts_scale_t(a: TruncSeries, halfsteps: int) -> TruncSeries:
    """Substitute t -> L^{halfsteps/2} t."""
    return TruncSeries(a.order, tuple(c.shift(n * halfsteps) for n, c in enumerate(a.coeffs)))


def ts_product(factors: Sequence[TruncSeries], order: int) -> TruncSeries:
    out = TruncSeries.one(order)
    for f in factors:
        out = ts_mul(out, f)
    return out


def geometric_product(r: int, order: int) -> TruncSeries:
    """prod_{0<=i<r} 1/(1 - L^{i+1} t), truncated."""
    factors = [
        TruncSeries.from_list([LPoly.monomial(2 * (i + 1) * n) for n in range(order + 1)])
        for i in range(r)
    ]
    return ts_product(factors, order)


def z_series(r: int, d: int, order: int, cache: MotiveCache | None = None) -> TruncSeries:
    coeffs = []
    for n in range(order + 1):
        halfsteps = -dimension(n, r, d) + n * (r - 1)
        coeffs.append(ncquot_motive(n, r, d, cache).shift(halfsteps))
    return TruncSeries(order, tuple(coeffs))


def _z1_rhs(z: TruncSeries, d: int) -> TruncSeries:
    # 1 + L^{d/2} t prod_{i<d} Z(L^i t)
    prod = ts_product([ts_scale_t(z, 2 * i) for i in range(d)], z.order)
    return TruncSeries.one(z.order) + prod.mul_t().scale_coeffs(LPoly.monomial(d))


def functional_residual_z1(d: int, order: int, cache: MotiveCache | None = None) -> TruncSeries:
    z = z_series(1, d, order, cache)
    return z - _z1_rhs(z, d)


def factorization_residual(r: int, d: int, order: int, cache: MotiveCache | None = None) -> TruncSeries:
    z1 = z_series(1, d, order, cache)
    rhs = ts_product([ts_scale_t(z1, 2 * i) for i in range(r)], order)
    return z_series(r, d, order, cache) - rhs


def solve_z1_functional(d: int, order: int) -> TruncSeries:
    """Solve Z = 1 + L^{d/2} t prod_{i<d} Z(L^i t) for Z with Z(0) = 1.

    Uses no motive data.  The coefficient of t^n on the right depends only on
    z_0..z_{n-1}, so each fixed-point sweep pins one more coefficient.
    """
    if d < 1:
        raise ValueError("d must be positive")
    z = TruncSeries.one(order)
    for _ in range(order):
        z = _z1_rhs(z, d)
    return z


def reineke_zeta_bar(r: int, d: int, order: int, cache: MotiveCache | None = None) -> TruncSeries:
    """sum_n L^{(d-1)C(n,2) + (r-1)n - N_n} [ncQuot^n_{r,d}] t^n (q = L)."""
    coeffs = []
    for n in range(order + 1):
        power = (d - 1) * comb(n, 2) + (r - 1) * n - dimension(n, r, d)
        coeffs.append(ncquot_motive(n, r, d, cache).shift(2 * power))
    return TruncSeries(order, tuple(coeffs))


def reineke_residual(r: int, d: int, order: int, cache: MotiveCache | None = None) -> TruncSeries:
    """Z_{r,d}(t) - zeta_bar(L, L^{d/2} t)."""
    return z_series(r, d, order, cache) - ts_scale_t(reineke_zeta_bar(r, d, order, cache), d)


def unshift_z_coeff(z: TruncSeries, n: int, r: int, d: int) -> LPoly:
    """Undo the virtual shift on the t^n coefficient of Z_{r,d}, recovering the motive."""
    return z.coeffs[n].shift(dimension(n, r, d) - n * (r - 1))


# L -> 1 specialization: plain integer lists, no LPoly involved.


def _int_mul(a: list[int], b: list[int], order: int) -> list[int]:
    out = [0] * (order + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(order + 1 - i):
                out[i + j] += x * b[j]
    return out


def fuss_catalan_series(r: int, d: int, order: int) -> list[int]:
    """Coefficients of z^r where z = 1 + t z^d."""
    z = [1] + [0] * order
    for _ in range(order):
        zd = [1] + [0] * order
        for _ in range(d):
            zd = _int_mul(zd, z, order)
        z = [1] + zd[:order]
    out = [1] + [0] * order
    for _ in range(r):
        out = _int_mul(out, z, order)
    return out


def fuss_catalan_check(r: int, d: int, n_max: int, cache: MotiveCache | None = None) -> bool:
    from .motives import euler_char

    expected = fuss_catalan_series(r, d, n_max)
    return all(euler_char(n, r, d, cache) == expected[n] for n in range(n_max + 1))
