"""Exact rational functions in one variable q with Laurent-polynomial numerator and denominator."""

from __future__ import annotations

from fractions import Fraction

import sympy

_Q = sympy.Symbol("q")


def _clean(p: dict) -> dict:
    return {e: c for e, c in p.items() if c}


def _mul(p: dict, r: dict) -> dict:
    out: dict[int, int] = {}
    for e1, c1 in p.items():
        for e2, c2 in r.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return _clean(out)


def _add(p: dict, r: dict, sign: int = 1) -> dict:
    out = dict(p)
    for e, c in r.items():
        out[e] = out.get(e, 0) + sign * c
    return _clean(out)


def _to_poly(p: dict, shift: int) -> sympy.Poly:
    return sympy.Poly({(e - shift,): c for e, c in p.items()}, _Q, domain="ZZ")


def _from_poly(P: sympy.Poly, shift: int) -> dict:
    return _clean({m[0] + shift: int(c) for m, c in P.terms()})


class LaurentRational:
    """num/den with num, den integer Laurent polynomials in q, kept gcd-reduced.

    Canonical form: the denominator is a polynomial in q^{-1} with positive
    constant term, and numerator and denominator share no factor.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: dict | int = 1, den: dict | int = 1):
        if isinstance(num, int):
            num = {0: num}
        if isinstance(den, int):
            den = {0: den}
        num, den = _clean(dict(num)), _clean(dict(den))
        if not den:
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = self._reduce(num, den)

    @staticmethod
    def _reduce(num: dict, den: dict) -> tuple[dict, dict]:
        if not num:
            return {}, {0: 1}
        ln, ld = min(num), min(den)
        N, D = _to_poly(num, ln), _to_poly(den, ld)
        g = sympy.gcd(N, D)
        N, D = sympy.exquo(N, g), sympy.exquo(D, g)
        if D.LC() < 0:
            N, D = -N, -D
        deg = D.degree()
        # num/den = q^(ln-ld) N(q)/D(q); move q^deg so den becomes a polynomial in q^-1
        return _from_poly(N, ln - ld - deg), _from_poly(D, -deg)

    @classmethod
    def q_power(cls, k: int) -> LaurentRational:
        return cls({k: 1})

    @classmethod
    def one(cls) -> LaurentRational:
        return cls(1)

    def __mul__(self, other):
        other = _coerce(other)
        return LaurentRational(_mul(self.num, other.num), _mul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if not other.num:
            raise ZeroDivisionError("division by zero rational function")
        return LaurentRational(_mul(self.num, other.den), _mul(self.den, other.num))

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __add__(self, other):
        other = _coerce(other)
        return LaurentRational(
            _add(_mul(self.num, other.den), _mul(other.num, self.den)), _mul(self.den, other.den)
        )

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return LaurentRational({e: -c for e, c in self.num.items()}, self.den)

    def __pow__(self, k: int):
        if k < 0:
            return LaurentRational.one() / self ** (-k)
        out = LaurentRational.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentRational(other)
        if not isinstance(other, LaurentRational):
            return NotImplemented
        return _mul(self.num, other.den) == _mul(other.num, self.den)

    def __hash__(self):
        return hash((tuple(sorted(self.num.items())), tuple(sorted(self.den.items()))))

    def is_one(self) -> bool:
        return self == LaurentRational.one()

    def evaluate(self, q) -> Fraction:
        q = Fraction(q)
        n = sum(c * q**e for e, c in self.num.items())
        d = sum(c * q**e for e, c in self.den.items())
        return Fraction(n) / Fraction(d)

    def to_sympy(self):
        return sympy.Add(*[c * _Q**e for e, c in self.num.items()]) / sympy.Add(
            *[c * _Q**e for e, c in self.den.items()]
        )

    def to_json(self) -> dict:
        return {
            "num": [[c, e] for e, c in sorted(self.num.items(), reverse=True)],
            "den": [[c, e] for e, c in sorted(self.den.items(), reverse=True)],
        }

    @classmethod
    def from_json(cls, data: dict) -> LaurentRational:
        return cls({e: c for c, e in data["num"]}, {e: c for c, e in data["den"]})

    def __str__(self):
        top = format_laurent(self.num)
        if self.den == {0: 1}:
            return top
        bottom = format_laurent(self.den)
        top = top if len(self.num) == 1 else f"({top})"
        bottom = bottom if len(self.den) == 1 else f"({bottom})"
        return f"{top}/{bottom}"

    __repr__ = __str__


def _coerce(x) -> LaurentRational:
    return x if isinstance(x, LaurentRational) else LaurentRational(int(x))


def format_laurent(p: dict) -> str:
    if not p:
        return "0"
    parts = []
    for e, c in sorted(p.items(), reverse=True):
        mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)
