"""Exact arithmetic in the universal Novikov field, truncated at an energy level.

Elements are finite sorted term lists ``(exponent, coefficient)`` with exact
rational entries, modeling series sum_i a_i t^{r_i} with r_i strictly
increasing.  The valuation is the minimal exponent.  Every value this package
computes (edge pairings, lattice areas, lifting heights) is rational, so a
rational coefficient field preserves bit-exact reproducibility; swapping in a
richer coefficient field is an interface decision deferred on purpose.

Truncation is a property of the element: ``truncation=None`` means no
truncation (+infinity), otherwise all stored exponents are < truncation.
Arithmetic propagates truncations pessimistically (min of the operands),
mirroring computation over the quotients by energy level.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

Q = Fraction


class NovikovError(ValueError):
    pass


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _min_trunc(a: Optional[Fraction], b: Optional[Fraction]) -> Optional[Fraction]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


@dataclass(frozen=True)
class NovikovElement:
    """A truncated Novikov series with exact rational exponents/coefficients."""

    terms: tuple[tuple[Fraction, Fraction], ...]
    truncation: Optional[Fraction] = None

    def __post_init__(self):
        terms = tuple((_q(e), _q(c)) for e, c in self.terms)
        for (e1, c1), (e2, _) in zip(terms, terms[1:]):
            if e1 >= e2:
                raise NovikovError("exponents must be strictly increasing")
        for _, c in terms:
            if c == 0:
                raise NovikovError("zero coefficients are not stored")
        trunc = None if self.truncation is None else _q(self.truncation)
        if trunc is not None and terms and terms[-1][0] >= trunc:
            raise NovikovError("term exponent at or above truncation")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "truncation", trunc)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "NovikovElement") -> "NovikovElement":
        return nov_add(self, other)

    def __sub__(self, other: "NovikovElement") -> "NovikovElement":
        return nov_add(self, nov_neg(other))

    def __mul__(self, other: "NovikovElement") -> "NovikovElement":
        return nov_mul(self, other)

    def __neg__(self) -> "NovikovElement":
        return nov_neg(self)


def nov(terms: Iterable[tuple] = (), truncation=None) -> NovikovElement:
    """Build an element from unsorted (exponent, coefficient) pairs.

    Pairs with equal exponents are merged, zero coefficients dropped, and
    terms at or above the truncation discarded.
    """
    trunc = None if truncation is None else _q(truncation)
    acc: dict[Fraction, Fraction] = {}
    for e, c in terms:
        e, c = _q(e), _q(c)
        acc[e] = acc.get(e, Q(0)) + c
    kept = sorted((e, c) for e, c in acc.items() if c != 0 and (trunc is None or e < trunc))
    return NovikovElement(tuple(kept), trunc)


def nov_zero(truncation=None) -> NovikovElement:
    return nov((), truncation)


def nov_const(c, truncation=None) -> NovikovElement:
    return nov([(0, c)], truncation)


def nov_monomial(exp, coeff=1, truncation=None) -> NovikovElement:
    return nov([(exp, coeff)], truncation)


NOV_ONE = nov_const(1)


def nov_val(a: NovikovElement) -> Optional[Fraction]:
    """Minimal exponent; ``None`` (= +infinity) for the zero element."""
    return a.terms[0][0] if a.terms else None


def nov_truncate(a: NovikovElement, E) -> NovikovElement:
    E = _q(E)
    trunc = _min_trunc(a.truncation, E)
    return NovikovElement(tuple((e, c) for e, c in a.terms if e < trunc), trunc)


def nov_add(a: NovikovElement, b: NovikovElement) -> NovikovElement:
    trunc = _min_trunc(a.truncation, b.truncation)
    return nov(list(a.terms) + list(b.terms), trunc)


def nov_neg(a: NovikovElement) -> NovikovElement:
    return NovikovElement(tuple((e, -c) for e, c in a.terms), a.truncation)


def nov_scale(k, a: NovikovElement) -> NovikovElement:
    k = _q(k)
    if k == 0:
        return nov_zero(a.truncation)
    return NovikovElement(tuple((e, k * c) for e, c in a.terms), a.truncation)


def nov_shift(delta, a: NovikovElement) -> NovikovElement:
    """Multiply by t^delta (shifts the truncation window along)."""
    delta = _q(delta)
    trunc = None if a.truncation is None else a.truncation + delta
    return NovikovElement(tuple((e + delta, c) for e, c in a.terms), trunc)


def _product_truncation(a: NovikovElement, b: NovikovElement) -> Optional[Fraction]:
    """Sound truncation window for a product.

    A term dropped from a (exponent >= T_a) meets stored or dropped content of
    b at exponent >= T_a + min(val b, T_b), and symmetrically; below the
    minimum of those bounds the product is fully determined.
    """

    def lowest(x: NovikovElement) -> Optional[Fraction]:
        v = nov_val(x)
        if v is not None:
            return v  # stored terms sit below the truncation
        return x.truncation

    candidates = []
    if a.truncation is not None:
        e = lowest(b)
        if e is not None:
            candidates.append(a.truncation + e)
    if b.truncation is not None:
        e = lowest(a)
        if e is not None:
            candidates.append(b.truncation + e)
    return min(candidates) if candidates else None


def nov_mul(a: NovikovElement, b: NovikovElement) -> NovikovElement:
    trunc = _product_truncation(a, b)
    acc: dict[Fraction, Fraction] = {}
    for ea, ca in a.terms:
        for eb, cb in b.terms:
            e = ea + eb
            if trunc is not None and e >= trunc:
                continue
            acc[e] = acc.get(e, Q(0)) + ca * cb
    return nov(acc.items(), trunc)


def nov_inv(a: NovikovElement, E) -> NovikovElement:
    """Inverse of a nonzero element modulo t^E.

    Writes a = c0 t^v (1 + r) with val r > 0 and expands the geometric series
    in r.  The result b satisfies a*b == 1 mod t^E; accordingly b carries terms
    up to exponent E - v, i.e. truncation E - val(a).
    """
    if a.is_zero():
        raise NovikovError("division by zero")
    E = _q(E)
    v, c0 = a.terms[0]
    # tail r with val(r) > 0; a = c0 t^v (1 + r)
    r = NovikovElement(tuple((e - v, c / c0) for e, c in a.terms[1:]), None)
    r = nov_truncate(r, E)
    result = nov_const(1, E)
    power = nov_const(1, E)
    if r.terms:
        delta = r.terms[0][0]
        k = 0
        while (k + 1) * delta < E:
            power = nov_mul(power, nov_neg(r))
            result = nov_add(result, power)
            k += 1
    result = nov_scale(Q(1) / c0, result)
    return nov_shift(-v, result)


def nov_eq_mod(a: NovikovElement, b: NovikovElement, E) -> bool:
    """True iff every term of a - b has exponent >= E."""
    E = _q(E)
    diff = nov_add(NovikovElement(a.terms), NovikovElement(tuple((e, -c) for e, c in b.terms)))
    return all(e >= E for e, _ in diff.terms)


# --- serialization ---------------------------------------------------------

_TERM_RE = re.compile(
    r"^\s*(?P<coeff>-?\d+(?:/\d+)?)\s*(?:\*\s*t\^\{(?P<exp>-?\d+(?:/\d+)?)\})?\s*$"
)


def nov_to_text(a: NovikovElement) -> str:
    """Render as e.g. ``3/2*t^{1/3} + -1*t^{2}``; constants drop the t-power."""
    if a.is_zero():
        return "0"
    parts = []
    for e, c in a.terms:
        if e == 0:
            parts.append(str(c))
        else:
            parts.append(f"{c}*t^{{{e}}}")
    return " + ".join(parts)


def nov_from_text(text: str, truncation=None) -> NovikovElement:
    text = text.strip()
    if text == "0" or not text:
        return nov_zero(truncation)
    terms = []
    for chunk in text.split("+"):
        m = _TERM_RE.match(chunk)
        if not m:
            raise NovikovError(f"cannot parse Novikov term {chunk!r}")
        coeff = Q(m.group("coeff"))
        exp = Q(m.group("exp")) if m.group("exp") else Q(0)
        terms.append((exp, coeff))
    return nov(terms, truncation)


def nov_to_json(a: NovikovElement) -> list[dict[str, str]]:
    return [{"exp": str(e), "coeff": str(c)} for e, c in a.terms]


def nov_from_json(data, truncation=None) -> NovikovElement:
    if isinstance(data, str):
        data = json.loads(data)
    return nov([(Q(item["exp"]), Q(item["coeff"])) for item in data], truncation)
