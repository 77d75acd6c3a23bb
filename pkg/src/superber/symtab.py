"""Partitions, row-major Young tableaux, permutations and the group algebra Q[S_l]."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import factorial, prod
from typing import Iterable, Mapping, Sequence

from .errors import NotProportional, ShapeMismatch, UnsupportedShape

Partition = tuple[int, ...]


def partition(parts: Iterable[int]) -> Partition:
    """Validate and normalize a partition (zero parts are dropped)."""
    p = tuple(int(x) for x in parts if x)
    if any(x < 0 for x in p) or any(a < b for a, b in zip(p, p[1:])):
        raise ValueError(f"{p} is not a partition")
    return p


def rectangle(rows: int, cols: int) -> Partition:
    return partition([cols] * rows) if cols else ()


def lambda_h(m: int, n: int) -> Partition:
    """``m`` rows of length ``n+1``."""
    return rectangle(m, n + 1)


def lambda_g(m: int, n: int) -> Partition:
    """``m+1`` rows of length ``n``."""
    return rectangle(m + 1, n)


def small_rectangle(m: int, n: int) -> Partition:
    return rectangle(m, n)


def large_rectangle(m: int, n: int) -> Partition:
    return rectangle(m + 1, n + 1)


def conjugate(shape: Partition) -> Partition:
    return tuple(sum(1 for r in shape if r > c) for c in range(shape[0])) if shape else ()


# -- permutations --------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Permutation:
    """Bijection of ``{1..l}``; ``images[k-1]`` is the image of ``k``."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"{self.images} is not a permutation")

    @classmethod
    def identity(cls, l: int) -> "Permutation":
        return cls(tuple(range(1, l + 1)))

    @classmethod
    def transposition(cls, l: int, a: int, b: int) -> "Permutation":
        img = list(range(1, l + 1))
        img[a - 1], img[b - 1] = b, a
        return cls(tuple(img))

    @classmethod
    def from_cycles(cls, l: int, *cycles: Sequence[int]) -> "Permutation":
        img = list(range(1, l + 1))
        for cyc in cycles:
            for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
                img[a - 1] = b
        return cls(tuple(img))

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition ``(self * other)(k) = self(other(k))``."""
        if len(self) != len(other):
            raise ShapeMismatch("permutations of different degrees")
        return Permutation(tuple(self.images[k - 1] for k in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for k, v in enumerate(self.images, start=1):
            inv[v - 1] = k
        return Permutation(tuple(inv))

    @cached_property
    def inversions(self) -> int:
        p = self.images
        return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])

    @property
    def sign(self) -> int:
        return -1 if self.inversions & 1 else 1

    def is_identity(self) -> bool:
        return all(v == k for k, v in enumerate(self.images, start=1))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(1, len(self) + 1):
            if start in seen or self(start) == start:
                continue
            cyc = [start]
            seen.add(start)
            k = self(start)
            while k != start:
                cyc.append(k)
                seen.add(k)
                k = self(k)
            out.append(tuple(cyc))
        return out

    def __str__(self):
        cyc = self.cycles()
        return "e" if not cyc else "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


# -- tableaux ------------------------------------------------------------------

@dataclass(frozen=True)
class Tableau:
    """Young tableau numbered row by row, left to right, top to bottom."""

    shape: Partition

    def __post_init__(self):
        object.__setattr__(self, "shape", partition(self.shape))

    @cached_property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        out, k = [], 1
        for length in self.shape:
            out.append(tuple(range(k, k + length)))
            k += length
        return tuple(out)

    @cached_property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(row[c] for row in self.rows if len(row) > c)
                     for c in range(self.shape[0] if self.shape else 0))

    @property
    def size(self) -> int:
        return sum(self.shape)

    def cell(self, k: int) -> tuple[int, int]:
        """1-based ``(row, column)`` of the box numbered ``k``."""
        for r, row in enumerate(self.rows, start=1):
            if row and row[0] <= k <= row[-1]:
                return r, k - row[0] + 1
        raise IndexError(k)

    def number(self, row: int, col: int) -> int:
        return self.rows[row - 1][col - 1]

    def __str__(self):
        return "[" + ",".join("[" + ",".join(map(str, r)) + "]" for r in self.rows) + "]"


def standard_tableau(shape: Iterable[int]) -> Tableau:
    return Tableau(partition(shape))


def _block_group(l: int, blocks: Sequence[Sequence[int]]) -> list[Permutation]:
    perms = []
    for choice in itertools.product(*(itertools.permutations(b) for b in blocks)):
        img = list(range(1, l + 1))
        for block, image in zip(blocks, choice):
            for a, b in zip(block, image):
                img[a - 1] = b
        perms.append(Permutation(tuple(img)))
    return perms


def row_group(t: Tableau) -> list[Permutation]:
    return _block_group(t.size, t.rows)


def column_group(t: Tableau) -> list[Permutation]:
    return _block_group(t.size, t.columns)


# -- group algebra ---------------------------------------------------------------

class SymmetrizerElement:
    """Element of Q[S_l] as a sparse map ``Permutation -> Fraction``."""

    __slots__ = ("l", "terms")

    def __init__(self, l: int, terms: Mapping[Permutation, object] | None = None):
        self.l = l
        clean = {}
        for p, c in (terms or {}).items():
            if len(p) != l:
                raise ShapeMismatch(f"permutation of degree {len(p)} in Q[S_{l}]")
            if c:
                clean[p] = Fraction(c)
        self.terms = clean

    @classmethod
    def identity(cls, l: int) -> "SymmetrizerElement":
        return cls(l, {Permutation.identity(l): 1})

    def __add__(self, other: "SymmetrizerElement") -> "SymmetrizerElement":
        self._check(other)
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, 0) + c
        return SymmetrizerElement(self.l, out)

    def __neg__(self):
        return SymmetrizerElement(self.l, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SymmetrizerElement(self.l, {p: c * other for p, c in self.terms.items()})
        self._check(other)
        out: dict[Permutation, Fraction] = {}
        for p, a in self.terms.items():
            for q, b in other.terms.items():
                r = p * q
                out[r] = out.get(r, 0) + a * b
        return SymmetrizerElement(self.l, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, SymmetrizerElement):
            return NotImplemented
        return self.l == other.l and self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def _check(self, other):
        if self.l != other.l:
            raise ShapeMismatch(f"Q[S_{self.l}] vs Q[S_{other.l}]")

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{p}" for p, c in sorted(self.terms.items()))


@lru_cache(maxsize=None)
def young_symmetrizer(t: Tableau) -> SymmetrizerElement:
    """``sum over sigma in C(T), tau in R(T) of sgn(sigma) * tau * sigma``."""
    out: dict[Permutation, Fraction] = {}
    cols = column_group(t)
    for tau in row_group(t):
        for sigma in cols:
            p = tau * sigma
            out[p] = out.get(p, 0) + sigma.sign
    return SymmetrizerElement(t.size, out)


def hook_product(shape: Partition) -> int:
    conj = conjugate(shape)
    return prod(shape[i] - j + conj[j] - i - 1
                for i in range(len(shape)) for j in range(shape[i]))


def mu_closed_form(shape: Partition, m: int, n: int) -> int:
    """Closed forms of the idempotency constant for ``lambda_g`` and ``lambda_h``."""
    shape = partition(shape)
    if shape == lambda_g(m, n):
        num = prod(factorial(m + n + 1 - t) for t in range(1, m + 2))
        den = prod(factorial(m + 1 - t) for t in range(1, m + 2))
    elif shape == lambda_h(m, n):
        num = prod(factorial(m + n + 1 - t) for t in range(1, m + 1))
        den = prod(factorial(m - t) for t in range(1, m + 1))
    else:
        raise UnsupportedShape(f"{shape} is neither lambda_g nor lambda_h at ({m}|{n})")
    return num // den


def mu_constant(shape: Iterable[int], method: str = "squaring",
                m: int | None = None, n: int | None = None) -> Fraction:
    """Scalar ``mu`` with ``e_T^2 = mu * e_T``.

    ``squaring`` multiplies out ``e_T^2`` in the group algebra; ``closed_form``
    needs ``m, n`` and accepts only ``lambda_g`` or ``lambda_h`` of ``(m|n)``.
    """
    shape = partition(shape)
    if method == "closed_form":
        if m is None or n is None:
            raise ValueError("closed_form needs m and n")
        return Fraction(mu_closed_form(shape, m, n))
    if method != "squaring":
        raise ValueError(f"unknown method {method!r}")
    e = young_symmetrizer(Tableau(shape))
    sq = e * e
    ident = Permutation.identity(e.l)
    mu = sq.terms.get(ident, Fraction(0)) / e.terms[ident]
    if sq != e * mu:
        raise NotProportional(f"e_T^2 is not a multiple of e_T for {shape}")
    return mu
