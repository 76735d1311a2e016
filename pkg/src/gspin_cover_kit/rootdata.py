"""Root datum of GSpin(2n+1) sitting inside the simply connected group of type B_{n+1}.

Ambient simple roots are alpha_1..alpha_{n+1} with alpha_i = e_i - e_{i+1} and
alpha_{n+1} = e_{n+1}.  The roots of G_n only involve e_2..e_{n+1}; alpha_1 is
kept for the ambient torus coordinates and pairings.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product

from .localfield import ONE, CharacterValue, FieldElement

WEYL_BOUND = 6


class BoundExceeded(RuntimeError):
    """An exhaustive computation was asked for beyond its configured bound."""


class RootError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Root:
    """A positive root of G_n: ``e_i - e_j`` (diff), ``e_i + e_j`` (sum) or ``e_i`` (short)."""

    kind: str
    i: int
    j: int = 0

    def __post_init__(self):
        if self.kind not in ("diff", "sum", "short"):
            raise RootError(f"unknown root kind {self.kind!r}")
        if self.kind != "short" and not self.i < self.j:
            raise RootError(f"{self.kind} root needs i < j, got ({self.i}, {self.j})")

    def check(self, n: int) -> Root:
        top = self.j if self.kind != "short" else self.i
        if self.i < 2 or top > n + 1:
            raise RootError(f"{self} is not a root of G_{n}")
        return self

    @property
    def is_long(self) -> bool:
        return self.kind != "short"

    def length_tag(self, n: int) -> int:
        return 2 if self.is_long and n > 1 else 1

    def vector(self, n: int) -> tuple[int, ...]:
        """Coordinates in e_1..e_{n+1}."""
        v = [0] * (n + 1)
        v[self.i - 1] = 1
        if self.kind == "diff":
            v[self.j - 1] = -1
        elif self.kind == "sum":
            v[self.j - 1] = 1
        return tuple(v)

    def coroot_vector(self, n: int) -> tuple[int, ...]:
        v = self.vector(n)
        return v if self.is_long else tuple(2 * x for x in v)

    def __str__(self):
        if self.kind == "diff":
            return f"e{self.i}-e{self.j}"
        if self.kind == "sum":
            return f"e{self.i}+e{self.j}"
        return f"e{self.i}"

    @classmethod
    def parse(cls, text: str) -> Root:
        m = _ROOT_RE.fullmatch(text.replace(" ", "").replace("eps", "e"))
        if not m:
            raise RootError(f"cannot parse root {text!r}; use forms like e2-e3, e2+e3, e3")
        i, op, j = m.groups()
        if op is None:
            return cls("short", int(i))
        return cls("diff" if op == "-" else "sum", int(i), int(j))


_ROOT_RE = re.compile(r"e(\d+)(?:([+-])e(\d+))?")


def root_from_vector(vec) -> tuple[int, Root]:
    """Return (sign, positive root) with sign * root.vector == vec."""
    nz = [(k + 1, x) for k, x in enumerate(vec) if x]
    if len(nz) == 1 and abs(nz[0][1]) == 1:
        (i, x), = nz
        return x, Root("short", i)
    if len(nz) == 2 and all(abs(x) == 1 for _, x in nz):
        (i, x), (j, y) = nz
        return x, Root("diff" if x != y else "sum", i, j)
    raise RootError(f"{vec} is not a root vector")


def positive_roots(n: int) -> list[Root]:
    if n < 0:
        raise RootError("rank must be non-negative")
    out = []
    for i in range(2, n + 2):
        for j in range(i + 1, n + 2):
            out.append(Root("diff", i, j))
            out.append(Root("sum", i, j))
    out.extend(Root("short", i) for i in range(2, n + 2))
    return out


def simple_root(i: int, n: int) -> Root:
    """alpha_i for 2 <= i <= n+1 (alpha_1 is ambient only)."""
    if not 2 <= i <= n + 1:
        raise RootError(f"alpha_{i} is not a simple root of G_{n}")
    return Root("short", i) if i == n + 1 else Root("diff", i, i + 1)


def simple_roots(n: int) -> list[Root]:
    return [simple_root(i, n) for i in range(2, n + 2)]


def _ambient_simple_vector(i: int, n: int) -> tuple[int, ...]:
    if not 1 <= i <= n + 1:
        raise RootError(f"simple index {i} out of range for rank {n + 1}")
    v = [0] * (n + 1)
    v[i - 1] = 1
    if i <= n:
        v[i] = -1
    return tuple(v)


def _simple_coroot_vector(j: int, n: int) -> tuple[int, ...]:
    v = _ambient_simple_vector(j, n)
    return v if j <= n else tuple(2 * x for x in v)


def pairing(alpha: Root | int, j: int, n: int) -> int:
    """<alpha, alpha_j^vee> in the ambient B_{n+1} datum.  ``alpha`` may be a simple index."""
    a = _ambient_simple_vector(alpha, n) if isinstance(alpha, int) else alpha.check(n).vector(n)
    c = _simple_coroot_vector(j, n)
    return sum(x * y for x, y in zip(a, c))


def cartan_matrix(n: int) -> list[list[int]]:
    return [[pairing(i, j, n) for j in range(1, n + 2)] for i in range(1, n + 2)]


def coroot_coefficients(alpha: Root, n: int) -> tuple[int, ...]:
    """Expansion of alpha^vee in the simple coroots alpha_1^vee..alpha_{n+1}^vee."""
    v = alpha.check(n).coroot_vector(n)
    c = [0] * (n + 1)
    acc = 0
    for l in range(n):
        acc += v[l]
        c[l] = acc
    top = v[n] + (c[n - 1] if n else 0)
    if top % 2:
        raise AssertionError(f"coroot of {alpha} is not integral")
    c[n] = top // 2
    return tuple(c)


class Basis(enum.Enum):
    ALPHA = "alpha"
    CONVENIENT = "convenient"


@dataclass(frozen=True)
class TorusElement:
    """A point of the rank n+1 torus.

    ALPHA: ``coords = (t_1, ..., t_{n+1})`` against the simple coroots.
    CONVENIENT: ``coords = (a_1, ..., a_n, t1)`` against eta_1^vee..eta_n^vee and beta_1^vee.
    """

    coords: tuple[FieldElement, ...]
    basis: Basis = Basis.ALPHA

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        if not self.coords:
            raise RootError("a torus element needs at least one coordinate")

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    @property
    def a(self) -> tuple[FieldElement, ...]:
        self._need(Basis.CONVENIENT)
        return self.coords[:-1]

    @property
    def t1(self) -> FieldElement:
        self._need(Basis.CONVENIENT)
        return self.coords[-1]

    def _need(self, basis):
        if self.basis is not basis:
            raise RootError(f"operation needs the {basis.value} basis")

    @classmethod
    def identity(cls, n: int, basis: Basis = Basis.ALPHA) -> TorusElement:
        return cls((ONE,) * (n + 1), basis)

    @classmethod
    def convenient(cls, a, t1=ONE) -> TorusElement:
        return cls(tuple(a) + (t1,), Basis.CONVENIENT)

    def __mul__(self, other: TorusElement) -> TorusElement:
        if other.basis is not self.basis:
            other = convert_coords(other)
        if other.n != self.n:
            raise RootError("rank mismatch")
        return TorusElement(tuple(x * y for x, y in zip(self.coords, other.coords)), self.basis)

    def inverse(self) -> TorusElement:
        return TorusElement(tuple(x.inverse() for x in self.coords), self.basis)

    def to(self, basis: Basis) -> TorusElement:
        return self if self.basis is basis else convert_coords(self)

    def tokens(self) -> list[str]:
        return [x.token() for x in self.coords]


def _prod(xs, start=ONE):
    out = start
    for x in xs:
        out = out * x
    return out


def convert_coords(t: TorusElement) -> TorusElement:
    n = t.n
    if t.basis is Basis.CONVENIENT:
        a, t1 = t.coords[:-1], t.coords[-1]
        out = []
        tail = ONE
        for i in range(n - 1, -1, -1):
            tail = tail * a[i].inverse()
            out.append(tail * t1 ** 2)
        out.reverse()
        out.append(t1)
        return TorusElement(tuple(out), Basis.ALPHA)
    ts = t.coords
    if n == 0:
        return TorusElement(ts, Basis.CONVENIENT)
    a = [ts[i + 1] / ts[i] for i in range(n - 1)]
    a.append(ts[n] ** 2 / ts[n - 1])
    return TorusElement(tuple(a) + (ts[n],), Basis.CONVENIENT)


def coroot_word(alpha: Root, x: FieldElement, n: int) -> TorusElement:
    """alpha^vee(x) in ALPHA coordinates."""
    return TorusElement(tuple(x ** k for k in coroot_coefficients(alpha, n)), Basis.ALPHA)


def root_character(alpha: Root | int, t: TorusElement) -> FieldElement:
    """Evaluate the root alpha, as a character, on t."""
    t = t.to(Basis.ALPHA)
    n = t.n
    return _prod(t.coords[j - 1] ** pairing(alpha, j, n) for j in range(1, n + 2))


def w0_conjugate(t: TorusElement) -> TorusElement:
    """Conjugation by the longest Weyl element; the result keeps the input basis."""
    c = t.to(Basis.CONVENIENT)
    a = c.coords[:-1]
    new = TorusElement.convenient([x.inverse() for x in a], _prod(a).inverse() * c.coords[-1])
    return new.to(t.basis)


def upsilon(t: TorusElement) -> FieldElement:
    c = t.to(Basis.CONVENIENT)
    return c.coords[-1].inverse() ** 2 * _prod(c.coords[:-1])


def delta_B(t: TorusElement) -> CharacterValue:
    """Modulus character of the Borel subgroup."""
    c = t.to(Basis.CONVENIENT)
    n = c.n
    e = sum(-x.v * (2 * (n - i) + 1) for i, x in enumerate(c.coords[:-1], start=1))
    return CharacterValue(q_exp=Fraction(e))


def embed_levi(k: int, b, h: TorusElement, n: int) -> TorusElement:
    """Image of (b, h) in GL_k x G_{n-k} inside the rank n+1 torus (ALPHA basis).

    ``b`` holds the GL_k coordinates a_1..a_k; ``h`` is a rank n-k element given
    against its own simple coroots beta_1^vee..beta_{n-k+1}^vee.
    """
    if not 0 <= k <= n:
        raise RootError(f"block size k={k} out of range 0..{n}")
    b = tuple(b)
    h = h.to(Basis.ALPHA)
    if len(b) != k or h.n != n - k:
        raise RootError("block coordinates have the wrong length")
    ts = [ONE] * (n + 1)
    tail = ONE
    for i in range(k - 1, -1, -1):
        tail = tail * b[i].inverse()
        ts[i] = tail
    hs = h.coords
    if k < n:
        for i in range(k):
            ts[i] = ts[i] * hs[0]
        for i, x in enumerate(hs):
            ts[k + i] = ts[k + i] * x
    else:
        for i in range(n):
            ts[i] = ts[i] * hs[0] ** 2
        ts[n] = ts[n] * hs[0]
    return TorusElement(tuple(ts), Basis.ALPHA)


# -- Weyl group of type B_n on e_2..e_{n+1} -----------------------------------


@dataclass(frozen=True)
class WeylElement:
    """Signed permutation: e_{k+2} maps to sign(perm[k]) * e_{|perm[k]|}."""

    perm: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.perm)

    def apply_vector(self, vec) -> tuple[int, ...]:
        out = list(vec)
        for k in range(self.n):
            out[k + 1] = 0
        for k, img in enumerate(self.perm):
            s = 1 if img > 0 else -1
            out[abs(img) - 1] += s * vec[k + 1]
        return tuple(out)

    def apply(self, root: Root) -> tuple[int, Root]:
        return root_from_vector(self.apply_vector(root.vector(self.n)))

    def __mul__(self, other: WeylElement) -> WeylElement:
        out = []
        for img in other.perm:
            inner = self.perm[abs(img) - 2]
            out.append(inner if img > 0 else -inner)
        return WeylElement(tuple(out))

    def inverse(self) -> WeylElement:
        out = [0] * self.n
        for k, img in enumerate(self.perm):
            out[abs(img) - 2] = (k + 2) if img > 0 else -(k + 2)
        return WeylElement(tuple(out))

    def is_identity(self) -> bool:
        return self.perm == tuple(range(2, self.n + 2))

    def inversions(self) -> list[Root]:
        """Positive roots sent to negative roots."""
        return [r for r in positive_roots(self.n) if self.apply(r)[0] < 0]

    def length(self) -> int:
        return len(self.inversions())

    def reduced_word(self) -> tuple[int, ...]:
        """Simple indices i_1..i_k (each in 2..n+1) with w = s_{i_1} ... s_{i_k}."""
        word = []
        w = self
        while not w.is_identity():
            for i in range(2, self.n + 2):
                if w.apply(simple_root(i, self.n))[0] < 0:
                    word.append(i)
                    w = w * simple_reflection(i, self.n)
                    break
        return tuple(reversed(word))

    def __str__(self):
        word = self.reduced_word()
        return "id" if not word else "s" + ".s".join(str(i) for i in word)


def identity_weyl(n: int) -> WeylElement:
    return WeylElement(tuple(range(2, n + 2)))


def simple_reflection(i: int, n: int) -> WeylElement:
    simple_root(i, n)
    perm = list(range(2, n + 2))
    if i == n + 1:
        perm[n - 1] = -(n + 1)
    else:
        perm[i - 2], perm[i - 1] = i + 1, i
    return WeylElement(tuple(perm))


def longest_element(n: int) -> WeylElement:
    return WeylElement(tuple(-k for k in range(2, n + 2)))


def from_word(word, n: int) -> WeylElement:
    w = identity_weyl(n)
    for i in word:
        w = w * simple_reflection(i, n)
    return w


def weyl_enumerate(n: int, bound: int = WEYL_BOUND) -> list[WeylElement]:
    if n > bound:
        raise BoundExceeded(f"Weyl group enumeration limited to n <= {bound}, got n={n}")
    return list(_enumerate_cached(n))


@lru_cache(maxsize=None)
def _enumerate_cached(n: int) -> tuple[WeylElement, ...]:
    idx = range(2, n + 2)
    return tuple(
        WeylElement(tuple(s * p for s, p in zip(signs, perm)))
        for perm in permutations(idx)
        for signs in product((1, -1), repeat=n)
    )


def weyl_length(w: WeylElement) -> int:
    return w.length()


def weyl_apply(w: WeylElement, root: Root) -> tuple[int, Root]:
    return w.apply(root)
