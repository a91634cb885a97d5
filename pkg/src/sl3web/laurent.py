"""Sparse Laurent polynomials in one variable ``q`` with exact integer coefficients."""

from __future__ import annotations

from collections.abc import Iterable, Mapping

__all__ = [
    "LaurentPoly",
    "lp_monomial",
    "lp_add",
    "lp_mul",
    "ZERO",
    "ONE",
    "Q",
    "LOOP_VALUE",
    "DIGON_VALUE",
]


class LaurentPoly:
    """An element of Z[q, q^-1] stored as ``{exponent: coefficient}``.

    Zero coefficients are never stored, so two polynomials are equal exactly
    when their term mappings are equal.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            e, c = int(e), int(c)
            acc[e] = acc.get(e, 0) + c
        self._terms = {e: c for e, c in sorted(acc.items()) if c}
        self._hash = None

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def degree_range(self) -> tuple[int, int] | None:
        if not self._terms:
            return None
        return min(self._terms), max(self._terms)

    def bar(self) -> LaurentPoly:
        """Substitute q -> q^-1."""
        return LaurentPoly({-e: c for e, c in self._terms.items()})

    def canonical(self) -> LaurentPoly:
        return LaurentPoly(self._terms)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials can be inverted")
            ((e, c),) = self._terms.items()
            if c not in (1, -1):
                raise ValueError("monomial with non-unit coefficient is not invertible")
            return LaurentPoly({-e * -n: c ** (-n)})
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def to_json(self) -> dict[str, str]:
        return {str(e): str(c) for e, c in self._terms.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, str | int]) -> LaurentPoly:
        return cls({int(e): int(c) for e, c in data.items()})

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if a == 1 else f"{a}{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"LaurentPoly({self._terms!r})"


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly({0: x})
    return NotImplemented


def lp_monomial(coeff: int, exponent: int) -> LaurentPoly:
    return LaurentPoly({exponent: coeff})


def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


ZERO = LaurentPoly()
ONE = lp_monomial(1, 0)
Q = lp_monomial(1, 1)
# value of an oriented circle, and the digon removal factor
LOOP_VALUE = LaurentPoly({2: 1, 0: 1, -2: 1})
DIGON_VALUE = LaurentPoly({1: 1, -1: 1})
