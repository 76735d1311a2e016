"""Exceptional characters, Gindikin-Karpelevich constants and pole counts."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from math import ceil

from .covertorus import CoverTorusElement, c_alpha, lift, multiply, sigma_torus
from .localfield import ONE, PI, CharacterValue, FieldElement, LocalField, SquareClassCharacter
from .ratfunc import LaurentRational
from .rootdata import (
    Basis,
    Root,
    TorusElement,
    WeylElement,
    coroot_word,
    positive_roots,
    simple_roots,
    upsilon,
)
from .subgroups import center_torus_membership, in_T2, in_Tm


class DomainError(ValueError):
    """Argument lies outside the subgroup on which the character is defined."""


@dataclass(frozen=True)
class ExceptionalCharacter:
    """The explicit exceptional character attached to eta and the Weil factor of ``field``.

    ``exponents[i-1]`` is the power of |a_i| in chi_0; the default n-i+1 is the
    exceptional choice, other values are useful as negative controls.
    """

    n: int
    field: LocalField
    eta: SquareClassCharacter = dc_field(default_factory=SquareClassCharacter)
    exponents: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.exponents is None:
            object.__setattr__(self, "exponents", tuple(self.n - i + 1 for i in range(1, self.n + 1)))
        if len(self.exponents) != self.n:
            raise ValueError("need one exponent per GL coordinate")

    def gamma(self, x: FieldElement) -> CharacterValue:
        return CharacterValue(zeta=self.field.weil_factor(x))


def _conv(t: TorusElement) -> TorusElement:
    return t.to(Basis.CONVENIENT)


def _half_valuation(x: FieldElement) -> int:
    if not x.is_square():
        raise DomainError(f"{x.token()} is not a square")
    return x.v // 2


def chi0_eval(E: ExceptionalCharacter, t: TorusElement) -> CharacterValue:
    """chi_0 on T^2; the CONVENIENT entries of t are the squares a_i^2."""
    t = _conv(t)
    if not in_T2(t):
        raise DomainError("chi_0 is only defined on T^2")
    q = sum(-e * _half_valuation(b) for e, b in zip(E.exponents, t.a))
    return CharacterValue(q_exp=Fraction(q)) * E.eta(upsilon(t))


def _center_factor(E: ExceptionalCharacter, d: FieldElement) -> CharacterValue:
    n = E.n
    val = CharacterValue(q_exp=Fraction(-d.v * n * (n + 1), 4)) * E.eta(d) ** n
    if n % 2 == 0:
        # d is a square here, so gamma(d) = 1
        return val
    return val * E.gamma(d) ** ceil(n / 2)


def _check_d(E: ExceptionalCharacter, d: FieldElement):
    if E.n % 2 == 0 and not d.is_square():
        raise DomainError("for even n the central parameter d must be a square")


def chi_center_eval(E: ExceptionalCharacter, t: TorusElement, d: FieldElement) -> CharacterValue:
    """chi(s(t) s(z)) with t in T^2 and z = prod eta_i^vee(d)."""
    _check_d(E, d)
    return chi0_eval(E, t) * _center_factor(E, d)


def split_center(E: ExceptionalCharacter, t: TorusElement) -> tuple[TorusElement, FieldElement]:
    """Write a center element as t0 * prod eta_i^vee(d) with t0 in T^2."""
    t = _conv(t)
    if not center_torus_membership(t):
        raise DomainError("element is not in the center of the covered torus")
    a = t.a
    d = FieldElement(a[0].v % 2, a[0].c) if (E.n % 2 == 1) else ONE
    t0 = TorusElement.convenient([x / d for x in a], t.t1)
    return t0, d


def z_element(n: int, d: FieldElement) -> TorusElement:
    return TorusElement.convenient([d] * n, ONE)


def chi_center_cover(E: ExceptionalCharacter, x: CoverTorusElement) -> CharacterValue:
    """The genuine character on zeta * s(t) for t in the center of the torus."""
    t0, d = split_center(E, x.t)
    z = z_element(E.n, d)
    # s(t0 z) = sigma(t0, z) s(t0) s(z)
    sign = x.phase * sigma_torus(E.field, t0, z)
    return CharacterValue.sign(sign) * chi_center_eval(E, t0, d)


def chi_prime_eval(E: ExceptionalCharacter, t: TorusElement) -> CharacterValue:
    """The extension chi' on T^m (value on s(t))."""
    t = _conv(t)
    if not in_Tm(t):
        raise DomainError("chi' is only defined on T^m")
    n = E.n
    a = t.a
    val = CharacterValue(q_exp=sum(Fraction(-e * x.v, 2) for e, x in zip(E.exponents, a)))
    val = val * E.eta(upsilon(t))
    for i in range(ceil(n / 2)):
        val = val * E.gamma(a[n - 2 * i - 1])
    return val


def chi_prime_cover(E: ExceptionalCharacter, x: CoverTorusElement) -> CharacterValue:
    return CharacterValue.sign(x.phase) * chi_prime_eval(E, x.t)


def lifted_coroot(F: LocalField, alpha: Root, y: FieldElement, n: int) -> CoverTorusElement:
    """alpha^vee*(y) for a simple root alpha_i: the generator alpha_i^*(y) = c_alpha(y, y) s(alpha_i^vee(y))."""
    i = alpha.i
    return lift(coroot_word(alpha, y, n), c_alpha(F, i, n, y, y))


@dataclass
class ExceptionalityReport:
    passed: bool
    checked: int
    witness: dict | None = None


def is_exceptional(E: ExceptionalCharacter, valuations=(-1, 0, 1, 2)) -> ExceptionalityReport:
    """Check chi(alpha^vee*(x^l(alpha))) = |x| for every simple root alpha and test value x."""
    F, n = E.field, E.n
    checked = 0
    for alpha in simple_roots(n):
        ell = alpha.length_tag(n)
        for x in F.elements(valuations):
            checked += 1
            elem = lifted_coroot(F, alpha, x ** ell, n)
            got = chi_center_cover(E, elem)
            want = F.abs_value(x)
            if got != want:
                return ExceptionalityReport(
                    False, checked, {"root": str(alpha), "x": x.token(), "got": str(got), "want": str(want)}
                )
    return ExceptionalityReport(True, checked)


# -- unramified values and GK constant --------------------------------------


def chi_a_alpha_exponent(n: int, alpha: Root) -> int:
    alpha.check(n)
    i, j = alpha.i, alpha.j
    if alpha.kind == "diff":
        return i - j
    if alpha.kind == "sum":
        return j + i - 2 * (n + 2)
    return -n - 2 + i


def chi_a_alpha(n: int, alpha: Root) -> LaurentRational:
    """chi(a_alpha) for an unramified exceptional chi, as a power of q."""
    return LaurentRational.q_power(chi_a_alpha_exponent(n, alpha))


def chi_a_alpha_derived(E: ExceptionalCharacter, alpha: Root) -> CharacterValue:
    """chi(a_alpha) recomputed from chi_0 on alpha^vee(pi^l(alpha))."""
    n = E.n
    t = coroot_word(alpha, PI ** alpha.length_tag(n), n)
    return chi0_eval(E, t)


def _gk_factor(k: int) -> LaurentRational:
    X = LaurentRational.q_power(k)
    return (1 - LaurentRational.q_power(-1) * X) / (1 - X)


def gk_factors(n: int, w: WeylElement) -> list[tuple[Root, LaurentRational]]:
    return [(a, _gk_factor(chi_a_alpha_exponent(n, a))) for a in w.inversions()]


@lru_cache(maxsize=4096)
def gk_constant(n: int, w: WeylElement) -> LaurentRational:
    out = LaurentRational.one()
    for _, f in gk_factors(n, w):
        out = out * f
    return out


def gk_w0_closed_form(n: int) -> LaurentRational:
    """c(w_0, chi) as the explicit double product over pairs and single indices."""
    L = LaurentRational.q_power
    out = LaurentRational.one()
    for i in range(2, n + 2):
        for j in range(i + 1, n + 2):
            top = (1 - L(-1 - j + i)) * (1 - L(-1 + j + i - 2 * (n + 2)))
            bot = (1 - L(-j + i)) * (1 - L(j + i - 2 * (n + 2)))
            out = out * top / bot
    for i in range(2, n + 2):
        out = out * (1 - L(-1 - n - 2 + i)) / (1 - L(-n - 2 + i))
    return out


def twisted_value_exponent(n: int, w: WeylElement, beta: Root) -> int:
    """q-exponent of (w chi)(a_beta) = chi(a_{w^{-1} beta})."""
    sign, root = w.inverse().apply(beta)
    return sign * chi_a_alpha_exponent(n, root)


def gk_constant_twisted(n: int, w: WeylElement, twist: WeylElement) -> LaurentRational:
    """c(w, twist chi) using the transported values."""
    out = LaurentRational.one()
    for beta in w.inversions():
        out = out * _gk_factor(twisted_value_exponent(n, twist, beta))
    return out


# -- pole structure -------------------------------------------------------


@dataclass(frozen=True)
class AffineExponent:
    """constant + sum_k coeffs[k] * s_{k+2}."""

    constant: int
    coeffs: tuple[int, ...]

    def at_zero(self) -> int:
        return self.constant

    def __str__(self):
        terms = [str(self.constant)]
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{'+' if c > 0 else '-'} {'' if abs(c) == 1 else abs(c)}s{k + 2}")
        return " ".join(terms)


def L_alpha(n: int, alpha: Root) -> AffineExponent:
    alpha.check(n)
    c = [0] * n
    i, j = alpha.i, alpha.j
    if alpha.kind == "diff":
        c[j - 2] += 1
        c[i - 2] -= 1
        return AffineExponent(j - i, tuple(c))
    if alpha.kind == "sum":
        c[i - 2] += 1
        c[j - 2] += 1
        return AffineExponent(2 * (n + 2) - i - j, tuple(c))
    c[i - 2] += 1
    return AffineExponent(n + 2 - i, tuple(c))


@dataclass
class PoleAnalysis:
    order: int
    numerator_poles: list[Root]
    denominator_poles: list[Root]
    exponents: dict


def pole_analysis(n: int, w: WeylElement) -> PoleAnalysis:
    """Count zeta(L) poles in the numerator minus zeta(L+1) poles in the denominator at s = 0."""
    R = w.inversions()
    Ls = {a: L_alpha(n, a) for a in R}
    top = [a for a in R if Ls[a].at_zero() == 1]
    bottom = [a for a in R if Ls[a].at_zero() + 1 == 1]
    return PoleAnalysis(len(top) - len(bottom), top, bottom, {str(a): str(L) for a, L in Ls.items()})


def pole_order(n: int, w: WeylElement) -> int:
    analysis = pole_analysis(n, w)
    # for the exceptional values no denominator zeta function has a pole at s = 0
    assert not analysis.denominator_poles, analysis.denominator_poles
    return analysis.order


def all_positive_exponents(n: int) -> dict[str, int]:
    return {str(a): chi_a_alpha_exponent(n, a) for a in positive_roots(n)}


def eta_family(include_ramified: bool = True) -> list[SquareClassCharacter]:
    """A spread of square-class characters used by exhaustive checks."""
    on_pi = [CharacterValue(z_exp=1), CharacterValue(), CharacterValue(zeta=2), CharacterValue(zeta=1, z_exp=1)]
    signs = (1, -1) if include_ramified else (1,)
    return [SquareClassCharacter(v, s) for v in on_pi for s in signs]


def valid_gamma_pi(F: LocalField) -> list[int]:
    """mu_4 exponents k with (i^k)^2 = (pi, pi)."""
    return [k for k in range(4) if (-1) ** k == F.hilbert(PI, PI)]


def center_product_check(E: ExceptionalCharacter, elements: list[CoverTorusElement]) -> tuple | None:
    """First pair on which chi_center_cover fails to be multiplicative, if any."""
    for x in elements:
        cx = chi_center_cover(E, x)
        for y in elements:
            if chi_center_cover(E, multiply(E.field, x, y)) != cx * chi_center_cover(E, y):
                return x, y
    return None


def prime_product_check(E: ExceptionalCharacter, elements: list[CoverTorusElement]) -> tuple | None:
    for x in elements:
        cx = chi_prime_cover(E, x)
        for y in elements:
            if chi_prime_cover(E, multiply(E.field, x, y)) != cx * chi_prime_cover(E, y):
                return x, y
    return None

