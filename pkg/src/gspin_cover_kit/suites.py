"""Exhaustive verification suites shared by the CLI ``verify`` command and the acceptance tests."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import product
from typing import Callable

from . import covertorus as ct
from . import exceptional as ex
from . import orbits as orb
from . import subgroups as sg
from .localfield import REAL, LocalField, hilbert_oracle
from .rootdata import WEYL_BOUND, Basis, BoundExceeded, TorusElement, embed_levi, longest_element, weyl_enumerate


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checked: int = 0
    witness: object = None
    seconds: float = 0.0
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "witness": self.witness,
            "seconds": round(self.seconds, 4),
            "details": self.details,
        }

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" witness={self.witness}" if self.witness is not None else ""
        return f"[{status}] {self.name} ({self.checked} checks, {self.seconds:.2f}s){extra}"


def _timed(fn: Callable[..., SuiteResult]) -> Callable[..., SuiteResult]:
    def run(*args, **kwargs) -> SuiteResult:
        start = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - start
        return res

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


def _fields(primes) -> list[LocalField]:
    return [LocalField(p) for p in primes]


@_timed
def cocycle_suite(primes=(3, 5), ns=(1, 2, 3), fault: str | None = None) -> SuiteResult:
    checked = 0
    for F in _fields(primes):
        for n in ns:
            sigma = None
            if fault == "flip-sigma":
                t = TorusElement.identity(n)
                sigma = ct.flipped_sigma(F, (t, t))
            rep = ct.verify_cocycle(F, n, (0, 1), sigma=sigma)
            checked += rep.checked
            if not rep.passed:
                return SuiteResult("cocycle identity", False, checked, {"p": F.p, "n": n, "triple": rep.witness})
    return SuiteResult("cocycle identity", True, checked)


@_timed
def commutator_suite(primes=(3, 5), ns=(1, 2, 3)) -> SuiteResult:
    checked = 0
    for F in _fields(primes):
        for n in ns:
            S = ct.sigma_table(F, n, lambda a, b: ct.sigma_torus(F, a, b))
            E = ct.torus_elements(F, n)
            codes = [ct.class_code(F, t) for t in E]
            for t, a in zip(E, codes):
                for t2, b in zip(E, codes):
                    checked += 1
                    if ct.commutator(F, t, t2) != S[a, b] * S[b, a]:
                        return SuiteResult(
                            "commutator formula", False, checked, {"p": F.p, "n": n, "pair": [t.tokens(), t2.tokens()]}
                        )
    return SuiteResult("commutator formula", True, checked)


@_timed
def center_suite(primes=(3, 5), ns=(1, 2, 3, 4)) -> SuiteResult:
    checked = 0
    for F in _fields(primes):
        for n in ns:
            U = sg.torus_universe(F, n)
            brute = set(sg.brute_centralizer(F, U, n))
            claimed = {t for t in U if sg.center_torus_membership(t)}
            checked += len(U)
            if brute != claimed:
                diff = next(iter(brute ^ claimed))
                return SuiteResult("center of covered torus", False, checked, {"p": F.p, "n": n, "element": diff.tokens()})
            if n % 2 == 0 and claimed != {t for t in U if sg.in_T2(t)}:
                return SuiteResult("center of covered torus", False, checked, {"p": F.p, "n": n, "reason": "center != T2"})
    return SuiteResult("center of covered torus", True, checked)


@_timed
def block_suite(primes=(3, 5), max_n: int = 3) -> SuiteResult:
    checked = 0
    for F in _fields(primes):
        vals = F.elements((0, 1))
        for n in range(1, max_n + 1):
            S = ct.sigma_table(F, n, lambda a, b: ct.sigma_torus(F, a, b))
            for k in range(0, n + 1):
                bs = list(product(vals, repeat=k))
                hs = [TorusElement(c, Basis.ALPHA) for c in product(vals, repeat=n - k + 1)]
                one_b = tuple(vals[0] for _ in range(k))
                one_h = TorusElement.identity(n - k)
                # sigma(a, t) and sigma(t, a) for the two Levi factors
                code_b = {b: ct.class_code(F, embed_levi(k, b, one_h, n)) for b in bs}
                code_h = {h: ct.class_code(F, embed_levi(k, one_b, h, n)) for h in hs}
                for b in bs:
                    for h in hs:
                        checked += 1
                        want = ct.sigma_mixed(F, b, h, k, n)
                        got = (int(S[code_b[b], code_h[h]]), int(S[code_h[h], code_b[b]]))
                        if got != want:
                            return SuiteResult(
                                "block compatibility", False, checked,
                                {"p": F.p, "n": n, "k": k, "mixed": [b_tok(b), h.tokens()], "got": got, "want": want},
                            )
                if k == 0:
                    continue
                pairs = [(b, h, ct.class_code(F, embed_levi(k, b, h, n))) for b in bs for h in hs]
                for b, h, c in pairs:
                    for b2, h2, c2 in pairs:
                        checked += 1
                        if ct.block_sigma(F, k, b, h, b2, h2, n) != S[c, c2]:
                            return SuiteResult(
                                "block compatibility", False, checked,
                                {"p": F.p, "n": n, "k": k, "args": [b_tok(b), h.tokens(), b_tok(b2), h2.tokens()]},
                            )
    return SuiteResult("block compatibility", True, checked)


def b_tok(b) -> list[str]:
    return [x.token() for x in b]


@_timed
def maximal_abelian_suite(primes=(3, 5), ns=(1, 2, 3)) -> SuiteResult:
    checked = 0
    for F in _fields(primes):
        for n in ns:
            rep = sg.is_maximal_abelian(F, sg.in_Tm, n)
            checked += rep.universe
            if not rep.maximal_abelian:
                return SuiteResult(
                    "T^m maximal abelian", False, checked,
                    {"p": F.p, "n": n, "abelian": rep.abelian, "extension": rep.extension_witness},
                )
    return SuiteResult("T^m maximal abelian", True, checked)


@_timed
def exceptional_suite(primes=(3, 5), ns=(0, 1, 2, 3, 4)) -> SuiteResult:
    checked = 0
    for p in primes:
        for k in ex.valid_gamma_pi(LocalField(p)):
            F = LocalField(p, gamma_pi=k)
            for n in ns:
                for eta in ex.eta_family():
                    rep = ex.is_exceptional(ex.ExceptionalCharacter(n, F, eta))
                    checked += rep.checked
                    if not rep.passed:
                        return SuiteResult("exceptionality", False, checked, {"p": p, "n": n, **rep.witness})
                if n >= 1:
                    bad = ex.ExceptionalCharacter(n, F, exponents=tuple(n - i for i in range(1, n + 1)))
                    checked += 1
                    if ex.is_exceptional(bad).passed:
                        return SuiteResult("exceptionality", False, checked, {"p": p, "n": n, "reason": "perturbed passed"})
    return SuiteResult("exceptionality", True, checked)


@_timed
def gk_suite(ns=(1, 2, 3)) -> SuiteResult:
    for n in ns:
        got, want = ex.gk_constant(n, longest_element(n)), ex.gk_w0_closed_form(n)
        if got != want:
            return SuiteResult("GK constant at w0", False, n, {"n": n, "got": str(got), "want": str(want)})
    return SuiteResult("GK constant at w0", True, len(ns))


@_timed
def pole_suite(ns=(1, 2, 3)) -> SuiteResult:
    checked = 0
    for n in ns:
        w0 = longest_element(n)
        for w in weyl_enumerate(n):
            checked += 1
            k = ex.pole_order(n, w)
            if (w == w0 and k != n) or (w != w0 and k >= n):
                return SuiteResult("pole order", False, checked, {"n": n, "w": str(w), "order": k})
    return SuiteResult("pole order", True, checked)


@_timed
def orbit_reduction_suite(ns=(1, 2, 3, 4, 5, 6)) -> SuiteResult:
    checked = 0
    for n in ns:
        rep = orb.check_reduction(n)
        checked += len(rep.above_O0)
        if not rep.holds:
            return SuiteResult("orbit reduction", False, checked, {"n": n, "orbit": str(rep.counterexample)})
    return SuiteResult("orbit reduction", True, checked)


@_timed
def v_orbit_suite(ns=(2, 3, 4, 5, 6)) -> SuiteResult:
    for n in ns:
        got, want = set(orb.v_orbit(orb.O1(n))), set(orb.u1_roots(n))
        if got != want:
            return SuiteResult("V_O1 = U_1", False, n, {"n": n, "diff": sorted(str(a) for a in got ^ want)})
    return SuiteResult("V_O1 = U_1", True, len(ns))


@_timed
def hilbert_suite(primes=(3, 5, 7), real: bool = True) -> SuiteResult:
    checked = 0
    fields = _fields(primes) + ([LocalField(REAL)] if real else [])
    for F in fields:
        for x in F.square_classes():
            for y in F.square_classes():
                checked += 1
                if F.hilbert(x, y) != hilbert_oracle(F, x, y):
                    return SuiteResult("Hilbert symbol oracle", False, checked, {"p": F.p, "x": x.token(), "y": y.token()})
    return SuiteResult("Hilbert symbol oracle", True, checked)


@_timed
def weil_suite(primes=(3, 5, 7), valuations=(-1, 0, 1, 2)) -> SuiteResult:
    checked = 0
    for p in primes:
        for k in ex.valid_gamma_pi(LocalField(p)):
            F = LocalField(p, gamma_pi=k)
            g = F.weil_factor
            els = F.elements(valuations)
            for x in els:
                checked += 1
                if g(x * x) != 0 or g(x.inverse()) != g(x):
                    return SuiteResult("Weil factor relations", False, checked, {"p": p, "kappa": k, "x": x.token()})
                for y in els:
                    checked += 1
                    rhs = (g(x) + g(y) + (0 if F.hilbert(x, y) == 1 else 2)) % 4
                    if g(x * y) != rhs:
                        return SuiteResult(
                            "Weil factor relations", False, checked, {"p": p, "kappa": k, "x": x.token(), "y": y.token()}
                        )
    return SuiteResult("Weil factor relations", True, checked)


ACCEPTANCE = [
    ("1 cocycle identity", cocycle_suite),
    ("2 commutator formula", commutator_suite),
    ("3 center claims", center_suite),
    ("4 block compatibility", block_suite),
    ("5 maximal abelian", maximal_abelian_suite),
    ("6 exceptionality", exceptional_suite),
    ("7 GK constant", gk_suite),
    ("8 residue structure", pole_suite),
    ("9 orbit reduction", orbit_reduction_suite),
    ("10 V_O1 = U_1", v_orbit_suite),
    ("11 Hilbert oracle", hilbert_suite),
    ("12 Weil factor", weil_suite),
]


def run_all(p: int | str = 3, n: int = 3, fault: str | None = None) -> list[SuiteResult]:
    """Run every suite restricted to one field and ranks up to n (each suite keeps its own cap)."""
    if n > WEYL_BOUND:
        raise BoundExceeded(f"exhaustive suites are limited to n <= {WEYL_BOUND}, got n={n}")
    if p == REAL:
        # only the Hilbert symbol is modelled over R
        return [hilbert_suite(primes=(), real=True)] + [
            gk_suite(tuple(range(1, min(n, 3) + 1))),
            pole_suite(tuple(range(1, min(n, 3) + 1))),
            orbit_reduction_suite(tuple(range(1, n + 1))),
            v_orbit_suite(tuple(range(2, n + 1))),
        ]
    upto = lambda cap, lo=1: tuple(range(lo, min(n, cap) + 1))  # noqa: E731
    return [
        cocycle_suite((p,), upto(3), fault=fault),
        commutator_suite((p,), upto(3)),
        center_suite((p,), upto(4)),
        block_suite((p,), min(n, 3)),
        maximal_abelian_suite((p,), upto(3)),
        exceptional_suite((p,), upto(4, 0)),
        gk_suite(upto(3)),
        pole_suite(upto(3)),
        orbit_reduction_suite(upto(6)),
        v_orbit_suite(upto(6, 2)),
        hilbert_suite((p,), real=True),
        weil_suite((p,)),
    ]


def summarize(results: list[SuiteResult]) -> dict:
    return {"passed": all(r.passed for r in results), "suites": [r.to_json() for r in results]}

