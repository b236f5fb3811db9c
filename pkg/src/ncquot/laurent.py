"""Exact Laurent polynomials in a square root of the Lefschetz motive.

Elements of Z[L^{1/2}, L^{-1/2}] are stored as a map ``exponent2 -> coeff``
where ``exponent2`` is twice the power of L, so ``{2: 1}`` is L and
``{1: 1}`` is L^{1/2}.  Coefficients are Python ints (unbounded).

>>> L = LPoly.L()
>>> (L - 1) * (L + 1)
LPoly('-1+L^2')
>>> lp_div_exact(L**2 - 1, L - 1)
LPoly('1+L')
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping


class LaurentError(ArithmeticError):
    pass


class NonExactDivision(LaurentError):
    """Division left a nonzero remainder."""


class NonMonicDivisor(LaurentError):
    """Divisor is zero or its leading coefficient is not +-1."""


class HalfIntegerExponent(LaurentError):
    """Integer evaluation requested for a polynomial with odd exponent2."""


class LPoly:
    """Immutable Laurent polynomial in L^{1/2} with integer coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[int, int] = {}
        for e, c in items:
            e, c = int(e), int(c)
            clean[e] = clean.get(e, 0) + c
        self._terms = {e: clean[e] for e in sorted(clean) if clean[e] != 0}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, int]) -> LPoly:
        # caller guarantees: no zero coefficients
        obj = cls.__new__(cls)
        obj._terms = {e: terms[e] for e in sorted(terms)}
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: int) -> LPoly:
        return cls({0: c})

    @classmethod
    def monomial(cls, exponent2: int, coeff: int = 1) -> LPoly:
        return cls({exponent2: coeff})

    @classmethod
    def L(cls) -> LPoly:
        return cls({2: 1})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def min_exponent2(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return next(iter(self._terms))

    def max_exponent2(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return next(reversed(self._terms))

    def leading_coeff(self) -> int:
        return self._terms[self.max_exponent2()] if self._terms else 0

    def coeff(self, exponent2: int) -> int:
        return self._terms.get(exponent2, 0)

    def is_integral(self) -> bool:
        """True when every exponent is an integer power of L."""
        return all(e % 2 == 0 for e in self._terms)

    def is_polynomial(self) -> bool:
        return self.is_integral() and all(e >= 0 for e in self._terms)

    def items(self):
        return self._terms.items()

    # ring operations

    def _coerce(self, other) -> LPoly:
        if isinstance(other, LPoly):
            return other
        if isinstance(other, int):
            return LPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> LPoly:
        return LPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LPoly:
        if k < 0:
            if len(self._terms) == 1:
                (e, c), = self._terms.items()
                if c in (1, -1):
                    return LPoly({e * k: c ** (-k)})
            raise ValueError("negative powers only for unit monomials")
        result = LPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, halfsteps: int) -> LPoly:
        """Multiply by L^{halfsteps/2}."""
        return LPoly._raw({e + halfsteps: c for e, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LPoly.const(other)
        if not isinstance(other, LPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        return f"LPoly('{format_plain(self)}')"

    def __str__(self) -> str:
        return format_plain(self)


def lp_add(a: LPoly, b: LPoly) -> LPoly:
    return a + b


def lp_mul(a: LPoly, b: LPoly) -> LPoly:
    return a * b


def lp_shift(a: LPoly, halfsteps: int) -> LPoly:
    return a.shift(halfsteps)


def lp_div_exact(num: LPoly, den: LPoly) -> LPoly:
    """Exact quotient ``num / den``; raises if the division leaves a remainder.

    Long division from the top exponent down.  The divisor's leading
    coefficient must be +-1.
    """
    if den.is_zero():
        raise NonMonicDivisor("division by zero polynomial")
    lead = den.leading_coeff()
    if lead not in (1, -1):
        raise NonMonicDivisor(f"leading coefficient {lead} of divisor is not a unit")
    den_top = den.max_exponent2()
    den_span = den_top - den.min_exponent2()
    den_terms = list(den.items())

    rem = dict(num.items())
    quot: dict[int, int] = {}
    while rem:
        top = max(rem)
        if top - min(rem) < den_span:
            raise NonExactDivision(f"nonzero remainder dividing {num} by {den}")
        shift = top - den_top
        c = rem[top] * lead  # lead is its own inverse
        quot[shift] = c
        for e, dc in den_terms:
            k = e + shift
            v = rem.get(k, 0) - c * dc
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return LPoly(quot)


def lp_eval_int(a: LPoly, q: int) -> int | Fraction:
    """Specialize L -> q.  Returns an int whenever the value is integral."""
    if q <= 0:
        raise ValueError("q must be a positive integer")
    if not a.is_integral():
        raise HalfIntegerExponent(f"{a} has half-integer powers of L")
    total = Fraction(0)
    for e, c in a.items():
        k = e // 2
        total += c * (Fraction(q) ** k)
    return int(total) if total.denominator == 1 else total


def lp_eval_one(a: LPoly) -> int:
    return sum(c for _, c in a.items())


# serialization and formatting


def to_json_obj(a: LPoly) -> list[list]:
    return [[e, str(c)] for e, c in a.items()]


def from_json_obj(obj: list) -> LPoly:
    return LPoly((int(e), int(c)) for e, c in obj)


def dumps(a: LPoly) -> str:
    return json.dumps(to_json_obj(a))


def loads(s: str) -> LPoly:
    return from_json_obj(json.loads(s))


def _power_plain(e: int) -> str:
    if e == 0:
        return ""
    if e == 2:
        return "L"
    if e % 2 == 0:
        return f"L^{e // 2}"
    return f"L^({e}/2)"


def _power_latex(e: int) -> str:
    if e == 0:
        return ""
    if e == 2:
        return r"\mathbb{L}"
    if e % 2 == 0:
        return rf"\mathbb{{L}}^{{{e // 2}}}"
    return rf"\mathbb{{L}}^{{{e}/2}}"


def _format(a: LPoly, power) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for e, c in a.items():
        mono = power(e)
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += sign + body
    return out


def format_plain(a: LPoly) -> str:
    """Ascending powers, ``L^(k/2)`` for half-integer exponents."""
    return _format(a, _power_plain)


def format_latex(a: LPoly) -> str:
    return _format(a, _power_latex)
