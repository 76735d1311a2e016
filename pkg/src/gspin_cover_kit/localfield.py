"""Local fields at square-class resolution.

A nonzero element of a p-adic field (p odd) is stored as ``pi**v * u**c`` with
``u`` a fixed non-residue unit, ignoring unit squares.  Everything computed in
this package (Hilbert symbols, absolute values, Weil factors, square-class
characters) factors through this quotient, which is what makes exhaustive
verification finite.  The real field keeps only the sign.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

REAL = "real"

# mu_4 is stored additively: k stands for i**k.
MU4_NAMES = {0: "1", 1: "i", 2: "-1", 3: "-i"}
MU4_FROM_NAME = {v: k for k, v in MU4_NAMES.items()}


class FieldError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class FieldElement:
    """``pi**v * u**c`` modulo unit squares (``c`` in {0, 1})."""

    v: int = 0
    c: int = 0

    def __post_init__(self):
        if self.c not in (0, 1):
            raise FieldError(f"unit class must be 0 or 1, got {self.c}")

    def __mul__(self, other: FieldElement) -> FieldElement:
        return FieldElement(self.v + other.v, self.c ^ other.c)

    def __truediv__(self, other: FieldElement) -> FieldElement:
        return FieldElement(self.v - other.v, self.c ^ other.c)

    def __pow__(self, k: int) -> FieldElement:
        return FieldElement(self.v * k, self.c & (k & 1))

    def inverse(self) -> FieldElement:
        return FieldElement(-self.v, self.c)

    def is_square(self) -> bool:
        return self.v % 2 == 0 and self.c == 0

    @property
    def code(self) -> int:
        """Square-class code in 0..3: bit 1 is the valuation parity, bit 0 the unit class."""
        return ((self.v & 1) << 1) | self.c

    def token(self) -> str:
        return f"{self.v}:{self.c}"

    @classmethod
    def parse(cls, token: str) -> FieldElement:
        """Parse a ``"v:c"`` token, e.g. ``"1:0"`` for the uniformizer."""
        try:
            v, c = token.split(":")
            return cls(int(v), int(c))
        except (ValueError, FieldError) as exc:
            raise FieldError(f"malformed field token {token!r}; expected 'valuation:class'") from exc


ONE = FieldElement(0, 0)
PI = FieldElement(1, 0)
U = FieldElement(0, 1)


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    return all(p % d for d in range(3, math.isqrt(p) + 1, 2))


def gauss_sum_mu4(p: int) -> int:
    """Normalized quadratic Gauss sum ``sum_x e(x^2/p) / sqrt(p)`` as a mu_4 exponent."""
    s = sum(cmath.exp(2j * math.pi * x * x / p) for x in range(p)) / math.sqrt(p)
    for k in range(4):
        if abs(s - 1j**k) < 1e-6:
            return k
    raise AssertionError(f"Gauss sum for p={p} is not a 4th root of unity: {s}")


@dataclass(frozen=True)
class LocalField:
    """Configured local field: an odd prime ``p`` or ``REAL``.

    ``gamma_pi`` is the Weil factor at the uniformizer as a mu_4 exponent; it
    must square to the Hilbert symbol ``(pi, pi)``.  The default is the
    normalized quadratic Gauss sum of ``p``.
    """

    p: int | str = 3
    nonresidue: int | None = None
    gamma_pi: int | None = None

    def __post_init__(self):
        if self.p == REAL:
            object.__setattr__(self, "nonresidue", -1)
            object.__setattr__(self, "gamma_pi", None)
            return
        if not isinstance(self.p, int) or not _is_odd_prime(self.p):
            raise FieldError(f"p must be an odd prime or 'real', got {self.p!r}")
        if self.nonresidue is None:
            u = next(a for a in range(2, self.p) if legendre(a, self.p) == -1)
            object.__setattr__(self, "nonresidue", u)
        elif legendre(self.nonresidue, self.p) != -1:
            raise FieldError(f"{self.nonresidue} is not a quadratic non-residue mod {self.p}")
        if self.gamma_pi is None:
            object.__setattr__(self, "gamma_pi", gauss_sum_mu4(self.p))
        k = self.gamma_pi % 4
        object.__setattr__(self, "gamma_pi", k)
        # kappa^2 = (pi, pi)
        if (-1) ** k != self.hilbert(PI, PI):
            raise FieldError(
                f"gamma(pi)={MU4_NAMES[k]} violates gamma(pi)^2 = (pi,pi) = {self.hilbert(PI, PI)}"
            )

    @property
    def is_real(self) -> bool:
        return self.p == REAL

    @property
    def q(self) -> int:
        if self.is_real:
            raise FieldError("the real field has no residue field")
        return self.p

    def __str__(self):
        if self.is_real:
            return "R"
        return f"Q_{self.p} (u={self.nonresidue}, gamma(pi)={MU4_NAMES[self.gamma_pi]})"

    # -- elements ---------------------------------------------------------

    def check(self, x: FieldElement) -> FieldElement:
        if self.is_real and x.v != 0:
            raise FieldError("real elements carry no valuation")
        return x

    def square_classes(self) -> list[FieldElement]:
        if self.is_real:
            return [FieldElement(0, 0), FieldElement(0, 1)]
        return [FieldElement(v, c) for v in (0, 1) for c in (0, 1)]

    def elements(self, valuations: Iterable[int] = (0, 1)) -> list[FieldElement]:
        if self.is_real:
            return self.square_classes()
        return [FieldElement(v, c) for v in valuations for c in (0, 1)]

    @property
    def class_bits(self) -> int:
        return 1 if self.is_real else 2

    def from_rational(self, x: Fraction | int) -> FieldElement:
        x = Fraction(x)
        if x == 0:
            raise FieldError("zero has no square class")
        if self.is_real:
            return FieldElement(0, 1 if x < 0 else 0)
        p = self.p
        num, den, v = x.numerator, x.denominator, 0
        while num % p == 0:
            num //= p
            v += 1
        while den % p == 0:
            den //= p
            v -= 1
        return FieldElement(v, 0 if legendre(num * den, p) == 1 else 1)

    def representative(self, x: FieldElement) -> Fraction:
        """A rational number in the square class of ``x``."""
        self.check(x)
        if self.is_real:
            return Fraction(-1 if x.c else 1)
        return Fraction(self.p) ** x.v * self.nonresidue**x.c

    # -- Hilbert symbol and Weil factor ----------------------------------

    def hilbert(self, x: FieldElement, y: FieldElement) -> int:
        """Quadratic Hilbert symbol ``(x, y)_2`` in {+1, -1}."""
        if self.is_real:
            return -1 if (x.c and y.c) else 1
        a, b = x.v & 1, y.v & 1
        eps = ((self.p - 1) // 2) & 1
        e = (a & b & eps) ^ (x.c & b) ^ (y.c & a)
        return -1 if e else 1

    def weil_factor(self, x: FieldElement) -> int:
        """gamma_psi(x) as a mu_4 exponent, for unramified psi with gamma(pi) = gamma_pi.

        Units have gamma = 1; the rest follows from
        gamma(xy) = gamma(x) gamma(y) (x, y) and gamma(x y^2) = gamma(x).
        """
        if self.is_real:
            raise FieldError("Weil factors are only modelled for p-adic fields")
        e = x.v & 1
        k = self.gamma_pi * e
        if self.hilbert(FieldElement(e, 0), FieldElement(0, x.c)) == -1:
            k += 2
        return k % 4

    def abs_value(self, x: FieldElement) -> CharacterValue:
        self.check(x)
        return CharacterValue(q_exp=Fraction(-x.v))


@dataclass(frozen=True)
class CharacterValue:
    """``q**q_exp * i**zeta * z**z_exp`` with ``z`` a formal symbol for eta(pi)."""

    q_exp: Fraction = Fraction(0)
    zeta: int = 0
    z_exp: int = 0

    def __post_init__(self):
        object.__setattr__(self, "q_exp", Fraction(self.q_exp))
        object.__setattr__(self, "zeta", self.zeta % 4)

    def __mul__(self, other: CharacterValue) -> CharacterValue:
        return CharacterValue(self.q_exp + other.q_exp, self.zeta + other.zeta, self.z_exp + other.z_exp)

    def __pow__(self, k: int | Fraction) -> CharacterValue:
        k = Fraction(k)
        if k.denominator != 1 and (self.zeta or self.z_exp):
            raise ValueError("only the q-part admits fractional powers")
        return CharacterValue(self.q_exp * k, self.zeta * int(k), self.z_exp * int(k))

    def inverse(self) -> CharacterValue:
        return self ** -1

    @classmethod
    def sign(cls, s: int) -> CharacterValue:
        return cls(zeta=0 if s == 1 else 2)

    @classmethod
    def root(cls, k: int) -> CharacterValue:
        return cls(zeta=k)

    def is_one(self) -> bool:
        return self == CharacterValue()

    def __str__(self):
        parts = []
        if self.zeta:
            parts.append(MU4_NAMES[self.zeta])
        if self.q_exp:
            parts.append(f"q^{self.q_exp}")
        if self.z_exp:
            parts.append(f"z^{self.z_exp}")
        return "*".join(parts) or "1"

    def to_json(self) -> dict:
        return {"q_exp": str(self.q_exp), "zeta": MU4_NAMES[self.zeta], "z_exp": self.z_exp}


@dataclass(frozen=True)
class SquareClassCharacter:
    """A character of F* trivial on unit squares.

    ``on_pi`` is its value at the uniformizer (by default the formal symbol z)
    and ``on_u`` the value at the non-residue unit, a sign.
    """

    on_pi: CharacterValue = field(default_factory=lambda: CharacterValue(z_exp=1))
    on_u: int = 1

    def __post_init__(self):
        if self.on_u not in (1, -1):
            raise FieldError("a character trivial on unit squares takes values +-1 on units")

    @classmethod
    def trivial(cls) -> SquareClassCharacter:
        return cls(on_pi=CharacterValue())

    def __call__(self, x: FieldElement) -> CharacterValue:
        return apply_character(self, x)


def apply_character(eta: SquareClassCharacter, x: FieldElement) -> CharacterValue:
    val = eta.on_pi ** x.v
    if x.c and eta.on_u == -1:
        val = val * CharacterValue.sign(-1)
    return val


def hilbert_oracle(field: LocalField, x: FieldElement, y: FieldElement, k: int = 4) -> int:
    """Hilbert symbol by brute-force conic solvability.

    p-adic: search for a primitive solution of ``z^2 = a x^2 + b y^2`` modulo
    ``p**k`` with ``a, b`` rational representatives of the classes.  The
    representatives have valuation at most 1, so a primitive solution mod p^4
    lifts by Hensel's lemma.  Real: search a small integer box.
    """
    import numpy as np

    a = field.representative(FieldElement(x.v % 2, x.c))
    b = field.representative(FieldElement(y.v % 2, y.c))
    if field.is_real:
        box = range(-3, 4)
        return 1 if any(
            (xx, yy, zz) != (0, 0, 0) and zz * zz == a * xx * xx + b * yy * yy
            for xx in box for yy in box for zz in box
        ) else -1
    p = field.p
    mod = p**k
    ai, bi = int(a) % mod, int(b) % mod
    r = np.arange(mod, dtype=np.int64)
    squares = np.zeros(mod, dtype=bool)
    squares[(r * r) % mod] = True
    sq = (r * r) % mod
    for xx in range(mod):
        vals = (ai * sq[xx] + bi * sq) % mod
        if xx % p:
            if squares[vals].any():
                return 1
        elif squares[vals[(r % p) != 0]].any():
            return 1
    # x, y both divisible by p forces p | z, so such triples are never primitive
    return -1


def mu4_parse(name: str) -> int:
    try:
        return MU4_FROM_NAME[name.strip()]
    except KeyError as exc:
        raise FieldError(f"gamma_pi must be one of {sorted(MU4_FROM_NAME)}, got {name!r}") from exc


def iter_tuples(values: list[FieldElement], length: int) -> Iterator[tuple[FieldElement, ...]]:
    from itertools import product

    return product(values, repeat=length)
