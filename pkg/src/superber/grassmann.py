"""Exact arithmetic in a finitely generated Grassmann algebra over the rationals.

A monomial ``eta_{i1} ... eta_{ik}`` with ``i1 < ... < ik`` is stored as the
bitmask with bits ``i1-1, ..., ik-1`` set; the unit monomial is ``0``.
Elements are immutable and hashable.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

from .errors import GeneratorMismatch, InhomogeneousError, NonInvertible, ParseError

DEFAULT_GENERATORS = 4

EVEN = 0
ODD = 1

Scalar = Union[int, Fraction]


def popcount(x: int) -> int:
    return bin(x).count("1")


@lru_cache(maxsize=1 << 16)
def monomial_sign(a: int, b: int) -> int:
    """Sign of ``a * b`` after sorting, or 0 if the monomials share a generator."""
    if a & b:
        return 0
    swaps = 0
    bb = b
    while bb:
        low = bb & -bb
        # generators of a with larger index than this generator of b
        swaps += popcount(a & ~((low << 1) - 1))
        bb ^= low
    return -1 if swaps & 1 else 1


def mask_to_gens(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def gens_to_mask(gens: Iterable[int], num_generators: int) -> tuple[int, int]:
    """Return ``(sign, mask)`` for the product of the listed generators in order."""
    sign = 1
    mask = 0
    for g in gens:
        if not 1 <= g <= num_generators:
            raise ValueError(f"generator index {g} outside 1..{num_generators}")
        bit = 1 << (g - 1)
        s = monomial_sign(mask, bit)
        if s == 0:
            return 0, 0
        sign *= s
        mask |= bit
    return sign, mask


def _monomial_key(mask: int) -> tuple[int, tuple[int, ...]]:
    gens = mask_to_gens(mask)
    return (len(gens), gens)


class Grassmann:
    """Element of the Grassmann algebra on ``num_generators`` generators.

    ``terms`` maps monomial bitmasks to nonzero :class:`Fraction` coefficients.
    """

    __slots__ = ("num_generators", "terms", "_hash")

    def __init__(self, terms: Mapping[int, Scalar] | None = None,
                 num_generators: int = DEFAULT_GENERATORS):
        if num_generators < 1:
            raise ValueError("num_generators must be positive")
        self.num_generators = num_generators
        clean: dict[int, Fraction] = {}
        limit = 1 << num_generators
        for mask, coef in (terms or {}).items():
            if not 0 <= mask < limit:
                raise ValueError(f"monomial {mask:#b} uses generators beyond {num_generators}")
            if coef:
                clean[mask] = Fraction(coef)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, Fraction], num_generators: int) -> "Grassmann":
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj.num_generators = num_generators
        obj.terms = terms
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def scalar(cls, value: Scalar, num_generators: int = DEFAULT_GENERATORS) -> "Grassmann":
        return cls({0: value}, num_generators)

    @classmethod
    def zero(cls, num_generators: int = DEFAULT_GENERATORS) -> "Grassmann":
        return cls._raw({}, num_generators)

    @classmethod
    def one(cls, num_generators: int = DEFAULT_GENERATORS) -> "Grassmann":
        return cls._raw({0: Fraction(1)}, num_generators)

    @classmethod
    def generator(cls, index: int, num_generators: int = DEFAULT_GENERATORS) -> "Grassmann":
        """The generator ``eta_index`` (1-based)."""
        if not 1 <= index <= num_generators:
            raise ValueError(f"generator index {index} outside 1..{num_generators}")
        return cls._raw({1 << (index - 1): Fraction(1)}, num_generators)

    @classmethod
    def monomial(cls, gens: Iterable[int], coef: Scalar = 1,
                 num_generators: int = DEFAULT_GENERATORS) -> "Grassmann":
        """``coef * eta_{g1} eta_{g2} ...`` with the generators multiplied in the given order."""
        sign, mask = gens_to_mask(gens, num_generators)
        return cls({mask: sign * Fraction(coef)} if sign else {}, num_generators)

    # -- structure ----------------------------------------------------------

    @property
    def body(self) -> Fraction:
        return self.terms.get(0, Fraction(0))

    @property
    def soul(self) -> "Grassmann":
        return Grassmann._raw({k: v for k, v in self.terms.items() if k}, self.num_generators)

    def is_zero(self) -> bool:
        return not self.terms

    def is_scalar(self) -> bool:
        return all(k == 0 for k in self.terms)

    def parity(self) -> int:
        """``EVEN`` or ``ODD``; zero counts as even."""
        parities = {popcount(k) & 1 for k in self.terms}
        if len(parities) > 1:
            raise InhomogeneousError(f"{self} mixes even and odd monomials")
        return parities.pop() if parities else EVEN

    def is_even(self) -> bool:
        return all(popcount(k) % 2 == 0 for k in self.terms)

    def is_odd(self) -> bool:
        return all(popcount(k) % 2 == 1 for k in self.terms)

    def _check(self, other: "Grassmann") -> None:
        if self.num_generators != other.num_generators:
            raise GeneratorMismatch(
                f"{self.num_generators} vs {other.num_generators} generators")

    def _coerce(self, other) -> "Grassmann":
        if isinstance(other, Grassmann):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Grassmann.scalar(other, self.num_generators)
        return NotImplemented

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Grassmann._raw(out, self.num_generators)

    __radd__ = __add__

    def __neg__(self):
        return Grassmann._raw({k: -v for k, v in self.terms.items()}, self.num_generators)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Grassmann.zero(self.num_generators)
            return Grassmann._raw({k: v * other for k, v in self.terms.items()},
                                  self.num_generators)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, Fraction] = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                s = monomial_sign(ka, kb)
                if s:
                    k = ka | kb
                    c = out.get(k, 0) + (va * vb if s > 0 else -(va * vb))
                    if c:
                        out[k] = c
                    else:
                        del out[k]
        return Grassmann._raw(out, self.num_generators)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Grassmann.one(self.num_generators)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "Grassmann":
        """Two-sided inverse via the terminating series in the nilpotent soul."""
        b = self.body
        if not b:
            raise NonInvertible(f"{self} has zero body")
        x = self.soul * (-1 / b)  # -soul/body
        result = Grassmann.one(self.num_generators)
        power = Grassmann.one(self.num_generators)
        for _ in range(self.num_generators):
            power = power * x
            if power.is_zero():
                break
            result = result + power
        return result * (1 / b)

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Grassmann):
            return self.num_generators == other.num_generators and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({0: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num_generators, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms as ``(generator tuple, coef)`` in canonical order."""
        return [(mask_to_gens(k), self.terms[k])
                for k in sorted(self.terms, key=_monomial_key)]

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"Grassmann({to_text(self)!r}, num_generators={self.num_generators})"


# -- functional interface ----------------------------------------------------

def gr_add(a: Grassmann, b: Grassmann) -> Grassmann:
    a._check(b)
    return a + b


def gr_mul(a: Grassmann, b: Grassmann) -> Grassmann:
    a._check(b)
    return a * b


def gr_parity(a: Grassmann) -> int:
    return a.parity()


def gr_inverse(a: Grassmann) -> Grassmann:
    return a.inverse()


# -- text and structured forms ----------------------------------------------

def to_text(a: Grassmann) -> str:
    """Canonical text form, e.g. ``1 - 1*g1g2`` or ``-3/2*g1``."""
    items = a.sorted_terms()
    if not items:
        return "0"
    parts = []
    for idx, (gens, coef) in enumerate(items):
        mag = str(abs(coef))
        body = mag if not gens else mag + "*" + "".join(f"g{g}" for g in gens)
        if idx == 0:
            parts.append(("-" if coef < 0 else "") + body)
        else:
            parts.append((" - " if coef < 0 else " + ") + body)
    return "".join(parts)


_TERM_RE = re.compile(
    r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*(?:\*\s*((?:g\d+\s*)+))?|((?:g\d+\s*)+))\s*")


def from_text(text: str, num_generators: int = DEFAULT_GENERATORS) -> Grassmann:
    """Parse the text form produced by :func:`to_text` (coefficients before ``*`` optional)."""
    text = text.strip()
    if not text:
        raise ParseError("empty Grassmann expression")
    pos = 0
    result = Grassmann.zero(num_generators)
    first = True
    while pos < len(text):
        match = _TERM_RE.match(text, pos)
        if not match or match.end() == pos:
            raise ParseError(f"cannot parse Grassmann expression at {text[pos:]!r}")
        sign, coef, gens_a, gens_b = match.groups()
        if sign is None and not first:
            raise ParseError(f"missing operator before {text[pos:]!r}")
        gens_str = gens_a or gens_b or ""
        try:
            value = Fraction(coef) if coef is not None else Fraction(1)
        except ZeroDivisionError as exc:
            raise ParseError(f"zero denominator in {coef!r}") from exc
        if sign == "-":
            value = -value
        gens = [int(g) for g in re.findall(r"g(\d+)", gens_str)]
        try:
            result = result + Grassmann.monomial(gens, value, num_generators)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
        pos = match.end()
        first = False
    return result


def to_struct(a: Grassmann) -> dict:
    return {"terms": [{"gens": list(gens), "coef": str(coef)}
                      for gens, coef in a.sorted_terms()]}


def from_struct(obj, num_generators: int = DEFAULT_GENERATORS) -> Grassmann:
    """Accept the structured form, a text string, or a bare number."""
    if isinstance(obj, str):
        return from_text(obj, num_generators)
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        if isinstance(obj, float) and not obj.is_integer():
            raise ParseError("floating-point coefficients are not accepted")
        return Grassmann.scalar(int(obj), num_generators)
    if not isinstance(obj, dict) or "terms" not in obj:
        raise ParseError(f"expected Grassmann object with 'terms', got {obj!r}")
    result = Grassmann.zero(num_generators)
    for term in obj["terms"]:
        try:
            coef = Fraction(str(term["coef"]))
            gens = [int(g) for g in term.get("gens", [])]
            result = result + Grassmann.monomial(gens, coef, num_generators)
        except (KeyError, ValueError, TypeError, ZeroDivisionError) as exc:
            raise ParseError(f"bad Grassmann term {term!r}: {exc}") from exc
    return result
