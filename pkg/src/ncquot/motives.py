"""Motivic classes of noncommutative Quot schemes.

The class of ncQuot^n_{r,d} is computed from the triangular recursion

    [ncQuot^n] = L^{dn^2}/[GL_n] * (L^{rn} - sum_{k<n} [ncQuot^k][GL_k][G(k,n)] L^{-dnk})

with [ncQuot^0] = 1.  The bracket is assembled as a Laurent polynomial and the
division by [GL_n] must be exact.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from functools import lru_cache

from .laurent import LPoly, lp_div_exact, lp_eval_one

ONE = LPoly.const(1)
L = LPoly.L()


class InvalidRange(ValueError):
    pass


class InvariantViolation(AssertionError):
    """A computed motive failed polynomiality, monicity or degree checks."""


def dimension(n: int, r: int, d: int) -> int:
    """Dimension (d-1)n^2 + rn of ncQuot^n_{r,d}."""
    return (d - 1) * n * n + r * n


def _check_params(n: int, r: int, d: int) -> None:
    if n < 0 or r < 1 or d < 1:
        raise InvalidRange(f"need n >= 0, r >= 1, d >= 1 (got n={n}, r={r}, d={d})")


@lru_cache(maxsize=None)
def quantum_integer(n: int) -> LPoly:
    """[n]_L = prod_{1<=i<=n} (L^i - 1)."""
    if n < 0:
        raise InvalidRange("n must be nonnegative")
    out = ONE
    for i in range(1, n + 1):
        out = out * (LPoly.monomial(2 * i) - 1)
    return out


@lru_cache(maxsize=None)
def gl_class(n: int) -> LPoly:
    """[GL_n] = prod_{0<=i<n} (L^n - L^i)."""
    if n < 0:
        raise InvalidRange("n must be nonnegative")
    out = ONE
    top = LPoly.monomial(2 * n)
    for i in range(n):
        out = out * (top - LPoly.monomial(2 * i))
    return out


@lru_cache(maxsize=None)
def gaussian_binomial(k: int, n: int) -> LPoly:
    """Class of the Grassmannian G(k, n): [n]_L / ([k]_L [n-k]_L)."""
    if not 0 <= k <= n:
        raise InvalidRange(f"need 0 <= k <= n (got k={k}, n={n})")
    return lp_div_exact(quantum_integer(n), quantum_integer(k) * quantum_integer(n - k))


def check_motive(value: LPoly, n: int, r: int, d: int) -> None:
    """Raise InvariantViolation unless ``value`` looks like [ncQuot^n_{r,d}]."""
    if not value.is_polynomial():
        raise InvariantViolation(f"motive ({n},{r},{d}) is not a polynomial in L: {value}")
    top = 2 * dimension(n, r, d)
    if value.max_exponent2() != top:
        raise InvariantViolation(
            f"motive ({n},{r},{d}) has degree {value.max_exponent2() // 2}, expected {top // 2}"
        )
    if value.leading_coeff() != 1:
        raise InvariantViolation(f"motive ({n},{r},{d}) is not monic: {value}")
    if any(c < 0 for _, c in value.items()):
        raise InvariantViolation(f"motive ({n},{r},{d}) has a negative coefficient: {value}")


@dataclass
class MotiveCache:
    """Memo table (n, r, d) -> [ncQuot^n_{r,d}].

    Every insertion is validated.  Concurrent fills are harmless: values are
    deterministic, so last-writer-wins stores the same polynomial.
    """

    entries: dict[tuple[int, int, int], LPoly] = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def get(self, key: tuple[int, int, int]) -> LPoly | None:
        if key[0] == 0:
            return ONE
        return self.entries.get(key)

    def insert(self, key: tuple[int, int, int], value: LPoly) -> None:
        check_motive(value, *key)
        with self._lock:
            self.entries[key] = value

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, key) -> bool:
        return key[0] == 0 or key in self.entries


_default_cache = MotiveCache()


def default_cache() -> MotiveCache:
    return _default_cache


def _bracket_sum(n: int, r: int, d: int, cache: MotiveCache, upto: int) -> LPoly:
    # sum_{k<upto} [ncQuot^k][GL_k][G(k,n)] L^{-dnk}
    total = LPoly()
    for k in range(upto):
        term = ncquot_motive(k, r, d, cache) * gl_class(k) * gaussian_binomial(k, n)
        total = total + term.shift(-2 * d * n * k)
    return total


def ncquot_motive(n: int, r: int, d: int, cache: MotiveCache | None = None) -> LPoly:
    """The class [ncQuot^n_{r,d}] as a polynomial in L.

    >>> ncquot_motive(2, 1, 2)
    LPoly('L^5+L^6')
    """
    _check_params(n, r, d)
    if cache is None:
        cache = _default_cache
    hit = cache.get((n, r, d))
    if hit is not None:
        return hit
    # fill lower levels iteratively so deep n never recurses
    for m in range(1, n + 1):
        if (m, r, d) in cache:
            continue
        bracket = LPoly.monomial(2 * r * m) - _bracket_sum(m, r, d, cache, m)
        value = lp_div_exact(bracket.shift(2 * d * m * m), gl_class(m))
        cache.insert((m, r, d), value)
    return cache.get((n, r, d))


def rearranged_rhs(n: int, r: int, d: int, cache: MotiveCache | None = None) -> LPoly:
    """sum_{k=0}^{n} [ncQuot^k][GL_k][G(k,n)] L^{-dnk}; should equal L^{rn} for every d."""
    _check_params(n, r, d)
    if cache is None:
        cache = _default_cache
    return _bracket_sum(n, r, d, cache, n + 1)


def rearranged_identity_check(n: int, r: int, d: int, cache: MotiveCache | None = None) -> bool:
    return rearranged_rhs(n, r, d, cache) == LPoly.monomial(2 * r * n)


def closed_form_d1(n: int, r: int) -> LPoly:
    """t^n coefficient of prod_{0<=i<r} 1/(1 - L^{i+1} t), the d = 1 generating series."""
    from .series import geometric_product

    if n < 0 or r < 1:
        raise InvalidRange("need n >= 0 and r >= 1")
    return geometric_product(r, n).coeffs[n]


def betti_numbers(n: int, r: int, d: int, cache: MotiveCache | None = None) -> list[tuple[int, int]]:
    """Borel-Moore Betti numbers as (power of L, multiplicity), nonzero entries only."""
    motive = ncquot_motive(n, r, d, cache)
    return [(e // 2, c) for e, c in motive.items()]


def euler_char(n: int, r: int, d: int, cache: MotiveCache | None = None) -> int:
    return lp_eval_one(ncquot_motive(n, r, d, cache))
