"""Canonical fillings of the rectangles lambda_h, lambda_g and their tensors.

Box ``(i, j)`` of the m x n small rectangle holds either ``e_i`` (index ``i``)
or ``eps_j`` (index ``m + j``). The lambda_h tableau appends a column
``e_1..e_m``; the lambda_g tableau appends a row ``eps_1..eps_n``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import factorial, prod

from .errors import ZeroPairing
from .supertensor import Signature, SuperTensor, apply_symmetrizer, pairing
from .symtab import Tableau, lambda_g, lambda_h, mu_closed_form, young_symmetrizer
from .grassmann import DEFAULT_GENERATORS

Filling = tuple[tuple[int, ...], ...]


def _column_odd_factor(rows: Filling, m: int) -> int:
    width = len(rows[0]) if rows else 0
    out = 1
    for c in range(width):
        counts = Counter(r[c] for r in rows if len(r) > c and r[c] > m)
        out *= prod(factorial(k) for k in counts.values())
    return out


def _row_even_factor(rows: Filling, m: int) -> int:
    out = 1
    for r in rows:
        counts = Counter(x for x in r if x <= m)
        out *= prod(factorial(k) for k in counts.values())
    return out


def kappa(rows: Filling, m: int) -> int:
    """Permutations of equal odd entries within columns."""
    return _column_odd_factor(rows, m)


def automorphisms(rows: Filling, m: int) -> int:
    """Permutations of equal odd entries within columns and equal even entries within rows."""
    return _column_odd_factor(rows, m) * _row_even_factor(rows, m)


def odd_entries(rows: Filling, m: int) -> int:
    return sum(1 for r in rows for x in r if x > m)


@dataclass(frozen=True)
class CanonicalPair:
    """One canonical filling of the small rectangle and the tableaux built on it.

    ``choice[i][j]`` is True when box ``(i+1, j+1)`` holds ``eps_{j+1}``.
    ``index`` is 1-based.
    """

    m: int
    n: int
    choice: tuple[tuple[bool, ...], ...]
    index: int

    @cached_property
    def small(self) -> Filling:
        m = self.m
        return tuple(tuple(m + j + 1 if odd else i + 1 for j, odd in enumerate(row))
                     for i, row in enumerate(self.choice))

    @cached_property
    def h_filling(self) -> Filling:
        return tuple(row + (i + 1,) for i, row in enumerate(self.small))

    @cached_property
    def g_filling(self) -> Filling:
        if self.n == 0:
            return ()
        return self.small + (tuple(self.m + j + 1 for j in range(self.n)),)

    @property
    def h_word(self) -> tuple[int, ...]:
        return tuple(x for r in self.h_filling for x in r)

    @property
    def g_word(self) -> tuple[int, ...]:
        return tuple(x for r in self.g_filling for x in r)

    @property
    def kappa_h(self) -> int:
        return kappa(self.h_filling, self.m)

    @property
    def kappa_g(self) -> int:
        return kappa(self.g_filling, self.m)

    @property
    def rho(self) -> int:
        """Odd entries inside the small rectangle."""
        return sum(1 for row in self.choice for odd in row if odd)

    @property
    def q(self) -> int:
        return odd_entries(self.g_filling, self.m)

    @property
    def p(self) -> int:
        return odd_entries(self.h_filling, self.m)

    @property
    def k(self) -> int:
        """Automorphism count of the g-tableau."""
        return automorphisms(self.g_filling, self.m)

    @property
    def l(self) -> int:
        """Automorphism count of the h-tableau."""
        return automorphisms(self.h_filling, self.m)

    @property
    def bits(self) -> str:
        return "/".join("".join("1" if b else "0" for b in row) for row in self.choice) or "-"

    def __str__(self):
        def show(rows):
            return "[" + ",".join("[" + ",".join(_letter(x, self.m, self.n) for x in r) + "]"
                                  for r in rows) + "]"
        return f"#{self.index} h={show(self.h_filling)} g={show(self.g_filling)}"


def _letter(x: int, m: int, n: int) -> str:
    if x <= m:
        return f"e{x}" if m > 1 else "e"
    return f"eps{x - m}" if n > 1 else "eps"


@lru_cache(maxsize=None)
def enumerate_canonical(m: int, n: int) -> tuple[CanonicalPair, ...]:
    """All ``2^(mn)`` pairs; the choice grid read row-major as a binary number
    (first box most significant, odd = 1) gives ascending order."""
    cells = m * n
    out = []
    for code in range(1 << cells):
        bits = [(code >> (cells - 1 - k)) & 1 == 1 for k in range(cells)]
        choice = tuple(tuple(bits[i * n:(i + 1) * n]) for i in range(m))
        out.append(CanonicalPair(m, n, choice, code + 1))
    return tuple(out)


# -- tensors ---------------------------------------------------------------------

def _symmetrized(word, shape, m, n, variance, num_generators):
    sig = Signature(variance * len(word), m, n)
    t = SuperTensor.basis_word(sig, word, 1, num_generators)
    return apply_symmetrizer(young_symmetrizer(Tableau(shape)), t)


@lru_cache(maxsize=None)
def build_h(p: CanonicalPair, num_generators: int = DEFAULT_GENERATORS) -> SuperTensor:
    return _symmetrized(p.h_word, lambda_h(p.m, p.n), p.m, p.n, "c", num_generators)


@lru_cache(maxsize=None)
def build_g(p: CanonicalPair, num_generators: int = DEFAULT_GENERATORS) -> SuperTensor:
    return _symmetrized(p.g_word, lambda_g(p.m, p.n), p.m, p.n, "c", num_generators)


def alpha(p: CanonicalPair) -> Fraction:
    """``(-1)^(n rho) kappa_h / kappa_g``."""
    sign = -1 if (p.n * p.rho) & 1 else 1
    return Fraction(sign * p.kappa_h, p.kappa_g)


@lru_cache(maxsize=None)
def build_h_prime(p: CanonicalPair, num_generators: int = DEFAULT_GENERATORS) -> SuperTensor:
    return build_h(p, num_generators) / alpha(p)


@lru_cache(maxsize=None)
def dualize(p: CanonicalPair, kind: str, num_generators: int = DEFAULT_GENERATORS) -> SuperTensor:
    """``(u*_1 ... u*_l) e_T`` on the dual letters of the g- or h-tableau."""
    if kind == "g":
        return _symmetrized(p.g_word, lambda_g(p.m, p.n), p.m, p.n, "u", num_generators)
    if kind == "h":
        return _symmetrized(p.h_word, lambda_h(p.m, p.n), p.m, p.n, "u", num_generators)
    raise ValueError(f"kind must be 'g' or 'h', got {kind!r}")


def zeta(p: CanonicalPair) -> Fraction:
    """Closed form of ``(g*, g)``: automorphisms * mu_g * (-1)^((q^2 - q)/2)."""
    sign = -1 if (p.q * (p.q - 1) // 2) & 1 else 1
    return Fraction(sign * p.k * mu_closed_form(lambda_g(p.m, p.n), p.m, p.n))


def zeta_prime(p: CanonicalPair) -> Fraction:
    """Closed form of ``(h*, h)``: automorphisms * mu_h * (-1)^((p^2 - p)/2)."""
    sign = -1 if (p.p * (p.p - 1) // 2) & 1 else 1
    return Fraction(sign * p.l * mu_closed_form(lambda_h(p.m, p.n), p.m, p.n))


def direct_pairing(p: CanonicalPair, kind: str, num_generators: int = DEFAULT_GENERATORS) -> Fraction:
    """``(g*, g)`` or ``(h*, h)`` evaluated on the tensors themselves."""
    base = build_g(p, num_generators) if kind == "g" else build_h(p, num_generators)
    value = pairing(dualize(p, kind, num_generators), base)
    if not value.is_scalar():
        raise AssertionError("pairing of rational tensors must be rational")
    return value.body


@lru_cache(maxsize=None)
def star_prime(p: CanonicalPair, kind: str, num_generators: int = DEFAULT_GENERATORS) -> SuperTensor:
    """``g*/(g*, g)`` or ``alpha * h*/(h*, h)``."""
    value = direct_pairing(p, kind, num_generators)
    if not value:
        raise ZeroPairing(f"({kind}*, {kind}) vanishes for pair {p.index}")
    scale = 1 / value if kind == "g" else alpha(p) / value
    return dualize(p, kind, num_generators) * scale


def basis(m: int, n: int, kind: str, num_generators: int = DEFAULT_GENERATORS) -> list[SuperTensor]:
    """``h``, ``h_prime`` or ``g`` tensors in enumeration order."""
    builders = {"h": build_h, "h_prime": build_h_prime, "g": build_g}
    if kind not in builders:
        raise ValueError(f"unknown basis kind {kind!r}")
    return [builders[kind](p, num_generators) for p in enumerate_canonical(m, n)]
