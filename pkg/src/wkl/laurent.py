"""Exact Laurent polynomials in one variable q with integer coefficients.

Values are immutable and canonical: the term tuple is sorted by exponent and
never stores a zero coefficient, so structural equality is polynomial
equality. Coefficients are bounded to the signed 64-bit range; anything that
would leave it raises :class:`CoefficientOverflow` instead of wrapping.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

INT64_MAX = 2**63 - 1
INT64_MIN = -(2**63)


class CoefficientOverflow(OverflowError):
    pass


def _check(c: int) -> int:
    if c > INT64_MAX or c < INT64_MIN:
        raise CoefficientOverflow(f"coefficient {c} does not fit in 64 bits")
    return c


class LaurentPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for e, c in items:
            acc[int(e)] = acc.get(int(e), 0) + int(c)
        self._terms = tuple(sorted((e, _check(c)) for e, c in acc.items() if c))
        self._hash = None

    @classmethod
    def _raw(cls, terms: tuple[tuple[int, int], ...]) -> "LaurentPoly":
        # terms must already be canonical
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def _from_dict(cls, acc: dict[int, int]) -> "LaurentPoly":
        return cls._raw(tuple(sorted((e, _check(c)) for e, c in acc.items() if c)))

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        if coeff == 0:
            return ZERO
        return cls._raw(((exp, _check(coeff)),))

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls.monomial(0, c)

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> tuple[tuple[int, int], ...]:
        return self._terms

    def coeffs(self) -> dict[int, int]:
        return dict(self._terms)

    def coefficient(self, exp: int) -> int:
        for e, c in self._terms:
            if e == exp:
                return c
        return 0

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def min_exp(self) -> int | None:
        return self._terms[0][0] if self._terms else None

    @property
    def max_exp(self) -> int | None:
        return self._terms[-1][0] if self._terms else None

    def constant_term(self) -> int:
        return self.coefficient(0)

    def in_qZq(self) -> bool:
        """True for the zero polynomial and for polynomials with all exponents >= 1."""
        return not self._terms or self._terms[0][0] >= 1

    def parity_check(self, parity: int) -> bool:
        parity %= 2
        return all(e % 2 == parity for e, _ in self._terms)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        acc = dict(self._terms)
        for e, c in other._terms:
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly._from_dict(acc)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(tuple((e, _check(-c)) for e, c in self._terms))

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scalar_mul(self, k: int) -> "LaurentPoly":
        if k == 0 or not self._terms:
            return ZERO
        if k == 1:
            return self
        return LaurentPoly._raw(tuple((e, _check(c * k)) for e, c in self._terms))

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by q**k."""
        if k == 0 or not self._terms:
            return self
        return LaurentPoly._raw(tuple((e + k, c) for e, c in self._terms))

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scalar_mul(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self._terms or not other._terms:
            return ZERO
        if len(other._terms) == 1:
            e0, c0 = other._terms[0]
            return self.shift(e0).scalar_mul(c0)
        if len(self._terms) == 1:
            e0, c0 = self._terms[0]
            return other.shift(e0).scalar_mul(c0)
        acc: dict[int, int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly._from_dict(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self._terms) == 1 and abs(self._terms[0][1]) == 1:
                e, c = self._terms[0]
                return LaurentPoly.monomial(e * n, c ** abs(n))
            raise ValueError("only signed monomials are invertible")
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def bar(self) -> "LaurentPoly":
        """The ring involution q -> q^-1."""
        return LaurentPoly._raw(tuple((-e, c) for e, c in reversed(self._terms)))

    def eval_int(self, x: int) -> int:
        if x == 0:
            raise ValueError("cannot evaluate a Laurent polynomial at 0")
        if x in (1, -1):
            return sum(c if (x == 1 or e % 2 == 0) else -c for e, c in self._terms)
        val = sum(Fraction(x) ** e * c for e, c in self._terms)
        if val.denominator != 1:
            raise ValueError(f"evaluation at {x} is not an integer: {val}")
        return int(val)

    # -- protocol ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, int):
            return self._terms == (((0, other),) if other else ())
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        return format_poly(self)

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in self._terms}

    @classmethod
    def from_json(cls, obj: Mapping[str, int]) -> "LaurentPoly":
        return cls({int(k): int(v) for k, v in obj.items()})


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
Q = LaurentPoly.monomial(1)
QINV = LaurentPoly.monomial(-1)


def q(exp: int = 1, coeff: int = 1) -> LaurentPoly:
    return LaurentPoly.monomial(exp, coeff)


def _monomial_text(e: int, c: int) -> str:
    if e == 0:
        return str(c)
    mono = "q" if e == 1 else f"q^{e}"
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{c}*{mono}"


def format_poly(p: LaurentPoly) -> str:
    """Text form with exponents descending, e.g. ``q^2 + 2 - 3*q^-1``."""
    if not p.terms:
        return "0"
    out = ""
    for i, (e, c) in enumerate(reversed(p.terms)):
        if i == 0:
            out = _monomial_text(e, c)
        elif c < 0:
            out += " - " + _monomial_text(e, -c)
        else:
            out += " + " + _monomial_text(e, c)
    return out


_TERM = re.compile(r"([+-]?)\s*(?:(\d+)\s*\*?\s*)?(q(?:\^\(?(-?\d+)\)?)?)?")


def parse_poly(text: str) -> LaurentPoly:
    """Inverse of :func:`format_poly`; also accepts ``**`` for powers."""
    s = text.replace("**", "^").strip()
    if not s:
        raise ValueError("empty polynomial text")
    acc: dict[int, int] = {}
    pos = 0
    s = s.replace(" ", "")
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise ValueError(f"cannot parse polynomial {text!r} at offset {pos}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = int(m.group(2)) if m.group(2) is not None else 1
        if m.group(3) is None:
            exp = 0
        elif m.group(4) is None:
            exp = 1
        else:
            exp = int(m.group(4))
        acc[exp] = acc.get(exp, 0) + sign * coeff
        pos = m.end()
        if pos < len(s) and s[pos] not in "+-":
            raise ValueError(f"cannot parse polynomial {text!r} at offset {pos}")
    return LaurentPoly(acc)
