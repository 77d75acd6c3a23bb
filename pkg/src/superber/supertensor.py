"""Tensors over a super vector space V of dimension (m|n) and its dual.

Basis indices are 1-based: ``1..m`` are the even vectors ``e_i`` and
``m+1..m+n`` the odd vectors ``eps_{j}``. A tensor is a finite sum
``word * coef`` with the Grassmann coefficient kept to the right of the word.
Moving a homogeneous coefficient ``c`` past a basis vector ``v`` costs the sign
``(-1)^(|c||v|)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DependentBasis, GeneratorMismatch, ShapeMismatch, SpanViolation
from .grassmann import DEFAULT_GENERATORS, Grassmann, monomial_sign, popcount
from .supermatrix import SuperMatrix
from .symtab import Permutation, SymmetrizerElement

Word = tuple[int, ...]
Flat = dict[tuple[Word, int], Fraction]

COVARIANT = "c"
CONTRAVARIANT = "u"


@dataclass(frozen=True)
class Signature:
    """Variance string (``c`` for a V factor, ``u`` for a V* factor) and dims."""

    variance: str
    m: int
    n: int

    def __post_init__(self):
        v = self.variance
        if set(v) - {"c", "u"}:
            raise ValueError(f"variance {v!r} may only contain 'c' and 'u'")
        if "uc" in v:
            raise ValueError("mixed signatures must be covariant block then contravariant block")
        if self.m < 0 or self.n < 0:
            raise ValueError("dims must be nonnegative")

    @classmethod
    def covariant(cls, l: int, m: int, n: int) -> "Signature":
        return cls("c" * l, m, n)

    @classmethod
    def contravariant(cls, l: int, m: int, n: int) -> "Signature":
        return cls("u" * l, m, n)

    @property
    def l(self) -> int:
        return len(self.variance)

    @property
    def dim(self) -> int:
        return self.m + self.n

    @property
    def is_covariant(self) -> bool:
        return "u" not in self.variance

    @property
    def is_contravariant(self) -> bool:
        return "c" not in self.variance

    def parity(self, index: int) -> int:
        return 1 if index > self.m else 0

    def __add__(self, other: "Signature") -> "Signature":
        if (self.m, self.n) != (other.m, other.n):
            raise ShapeMismatch("signatures over different dims")
        return Signature(self.variance + other.variance, self.m, self.n)


def word_parity(word: Word, m: int) -> int:
    return sum(1 for x in word if x > m) & 1


class SuperTensor:
    """Sparse ``word -> Grassmann`` association in right-normal form."""

    __slots__ = ("signature", "terms", "num_generators")

    def __init__(self, signature: Signature, terms: Mapping[Word, Grassmann | int | Fraction] | None = None,
                 num_generators: int = DEFAULT_GENERATORS):
        self.signature = signature
        self.num_generators = num_generators
        clean: dict[Word, Grassmann] = {}
        for word, coef in (terms or {}).items():
            word = tuple(word)
            if len(word) != signature.l:
                raise ShapeMismatch(f"word {word} has length {len(word)}, expected {signature.l}")
            if any(not 1 <= x <= signature.dim for x in word):
                raise ShapeMismatch(f"word {word} has indices outside 1..{signature.dim}")
            if not isinstance(coef, Grassmann):
                coef = Grassmann.scalar(coef, num_generators)
            elif coef.num_generators != num_generators:
                raise GeneratorMismatch("coefficient over a different Grassmann algebra")
            if coef:
                clean[word] = coef
        self.terms = clean

    # -- flat form: {(word, monomial mask): rational} -------------------------

    def flat(self) -> Flat:
        return {(w, k): v for w, g in self.terms.items() for k, v in g.terms.items()}

    @classmethod
    def from_flat(cls, signature: Signature, flat: Mapping[tuple[Word, int], Fraction],
                  num_generators: int) -> "SuperTensor":
        grouped: dict[Word, dict[int, Fraction]] = {}
        for (w, k), v in flat.items():
            if v:
                grouped.setdefault(w, {})[k] = v
        obj = cls.__new__(cls)
        obj.signature = signature
        obj.num_generators = num_generators
        obj.terms = {w: Grassmann._raw(t, num_generators) for w, t in grouped.items()}
        return obj

    @classmethod
    def zero(cls, signature: Signature, num_generators: int = DEFAULT_GENERATORS) -> "SuperTensor":
        return cls(signature, {}, num_generators)

    @classmethod
    def basis_word(cls, signature: Signature, word: Sequence[int], coef=1,
                   num_generators: int = DEFAULT_GENERATORS) -> "SuperTensor":
        return cls(signature, {tuple(word): coef}, num_generators)

    # -- structure ------------------------------------------------------------

    @property
    def m(self) -> int:
        return self.signature.m

    @property
    def n(self) -> int:
        return self.signature.n

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return all(g.is_scalar() for g in self.terms.values())

    def rational_vector(self) -> dict[Word, Fraction]:
        if not self.is_rational():
            raise ValueError("tensor has non-scalar Grassmann coefficients")
        return {w: g.body for w, g in self.terms.items()}

    def odd_counts(self) -> set[int]:
        """Parities of ``(odd letters in word) + (coefficient degree)`` over all terms."""
        out = set()
        for (w, k) in self.flat():
            out.add((word_parity(w, self.m) + popcount(k)) & 1)
        return out

    def _check(self, other: "SuperTensor") -> None:
        if self.signature != other.signature:
            raise ShapeMismatch(f"{self.signature} vs {other.signature}")
        if self.num_generators != other.num_generators:
            raise GeneratorMismatch("tensors over different Grassmann algebras")

    # -- linear structure -------------------------------------------------------

    def __add__(self, other: "SuperTensor") -> "SuperTensor":
        self._check(other)
        out = dict(self.terms)
        for w, g in other.terms.items():
            s = out[w] + g if w in out else g
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return SuperTensor(self.signature, out, self.num_generators)

    def __neg__(self):
        return SuperTensor(self.signature, {w: -g for w, g in self.terms.items()},
                           self.num_generators)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        """Right multiplication ``(word * c) * scalar = word * (c * scalar)``."""
        if isinstance(scalar, (int, Fraction)):
            if not scalar:
                return SuperTensor.zero(self.signature, self.num_generators)
            return SuperTensor(self.signature, {w: g * scalar for w, g in self.terms.items()},
                               self.num_generators)
        if isinstance(scalar, Grassmann):
            return SuperTensor(self.signature, {w: g * scalar for w, g in self.terms.items()},
                               self.num_generators)
        return NotImplemented

    def __rmul__(self, scalar):
        if isinstance(scalar, (int, Fraction)):
            return self * scalar
        if isinstance(scalar, Grassmann):
            return self.lmul(scalar)
        return NotImplemented

    def __truediv__(self, scalar):
        return self * (1 / Fraction(scalar))

    def lmul(self, scalar: Grassmann) -> "SuperTensor":
        """Left multiplication, normalized to the right with Koszul signs."""
        flat: Flat = {}
        m = self.m
        for (w, k), v in self.flat().items():
            for ks, vs in scalar.terms.items():
                s = monomial_sign(ks, k)
                if not s:
                    continue
                if popcount(ks) & word_parity(w, m):
                    s = -s
                key = (w, ks | k)
                flat[key] = flat.get(key, 0) + s * vs * v
        return SuperTensor.from_flat(self.signature, flat, self.num_generators)

    def __eq__(self, other):
        if not isinstance(other, SuperTensor):
            return NotImplemented
        return (self.signature == other.signature and self.num_generators == other.num_generators
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.signature, frozenset(self.terms.items())))

    def sorted_terms(self) -> list[tuple[Word, Grassmann]]:
        return sorted(self.terms.items())

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"SuperTensor({self.signature.variance!r}, {to_text(self)!r})"


# -- text rendering ----------------------------------------------------------

def letter(index: int, m: int, n: int, dual: bool = False) -> str:
    star = "*" if dual else ""
    if index <= m:
        return (f"e{index}" if m > 1 else "e") + star
    j = index - m
    return (f"eps{j}" if n > 1 else "eps") + star


def word_text(word: Word, sig: Signature) -> str:
    return " ".join(letter(x, sig.m, sig.n, v == "u") for x, v in zip(word, sig.variance)) or "1"


def to_text(t: SuperTensor) -> str:
    if not t.terms:
        return "0"
    # rational coefficients lead as in 2ee; others follow the word (right-normal form)
    parts = []
    for w, g in t.sorted_terms():
        coef, word = str(g), word_text(w, t.signature)
        if g.is_scalar():
            parts.append(f"({coef}) {word}" if coef.startswith("-") else f"{coef} {word}")
        else:
            parts.append(f"{word} ({coef})")
    return " + ".join(parts)


# -- symmetric group actions -------------------------------------------------------

def _koszul_left(sigma: Permutation, word: Word, m: int) -> tuple[int, Word]:
    l = len(word)
    out = [0] * l
    img = sigma.images
    for i in range(l):
        out[img[i] - 1] = word[i]
    swaps = 0
    for i in range(l):
        if word[i] > m:
            for j in range(i + 1, l):
                if word[j] > m and img[i] > img[j]:
                    swaps += 1
    return (-1 if swaps & 1 else 1), tuple(out)


def _koszul_right(word: Word, sigma: Permutation, m: int) -> tuple[int, Word]:
    # (u_1 ... u_l) sigma = u_{sigma(1)} ... u_{sigma(l)}: the inverse relabelling
    return _koszul_left(sigma.inverse(), word, m)


def perm_action(sigma: Permutation, t: SuperTensor) -> SuperTensor:
    """Left action ``sigma(v_1...v_l) = +- v_{sigma^-1(1)} ... v_{sigma^-1(l)}``.

    The sign counts pairs of odd factors whose relative order is reversed.
    """
    if not t.signature.is_covariant:
        raise ShapeMismatch("left permutation action needs a covariant tensor")
    if len(sigma) != t.signature.l:
        raise ShapeMismatch(f"permutation of degree {len(sigma)} on a length-{t.signature.l} tensor")
    out: dict[Word, Grassmann] = {}
    for w, g in t.terms.items():
        s, nw = _koszul_left(sigma, w, t.m)
        out[nw] = g if s > 0 else -g
    return SuperTensor(t.signature, out, t.num_generators)


def right_perm_action(t: SuperTensor, sigma: Permutation) -> SuperTensor:
    """Right action ``(u_1...u_l) sigma = +- u_{sigma(1)} ... u_{sigma(l)}``."""
    if not t.signature.is_contravariant:
        raise ShapeMismatch("right permutation action needs a contravariant tensor")
    if len(sigma) != t.signature.l:
        raise ShapeMismatch(f"permutation of degree {len(sigma)} on a length-{t.signature.l} tensor")
    out: dict[Word, Grassmann] = {}
    for w, g in t.terms.items():
        s, nw = _koszul_right(w, sigma, t.m)
        out[nw] = g if s > 0 else -g
    return SuperTensor(t.signature, out, t.num_generators)


def apply_symmetrizer(s: SymmetrizerElement, t: SuperTensor) -> SuperTensor:
    """``s * t`` for covariant ``t``; ``t * s`` for contravariant ``t``."""
    sig = t.signature
    if s.l != sig.l:
        raise ShapeMismatch(f"element of Q[S_{s.l}] on a length-{sig.l} tensor")
    if sig.is_covariant:
        act = lambda p, w: _koszul_left(p, w, sig.m)  # noqa: E731
    elif sig.is_contravariant:
        act = lambda p, w: _koszul_right(w, p, sig.m)  # noqa: E731
    else:
        raise ShapeMismatch("symmetrizers act on pure covariant or contravariant tensors")
    flat: Flat = {}
    for w, g in t.terms.items():
        for p, c in s.terms.items():
            sign, nw = act(p, w)
            f = c if sign > 0 else -c
            for k, v in g.terms.items():
                key = (nw, k)
                flat[key] = flat.get(key, 0) + f * v
    return SuperTensor.from_flat(sig, flat, t.num_generators)


# -- GL(V) action ------------------------------------------------------------------

def _images(a: SuperMatrix, dual: bool) -> dict[int, list[tuple[int, int, Fraction, int]]]:
    """Per basis index: ``(new index, monomial, coef, monomial parity)``.

    Covariant: ``A(theta_v) = sum_i theta_i a_{iv}``. Dual: ``A(theta*_v) =
    sum_j (A^-1)_{vj} theta*_j`` with the coefficient on the left.
    """
    size = a.size
    if dual:
        grid = a.inverse().entries
        pick = lambda v, i: grid[v - 1][i - 1]  # noqa: E731
    else:
        grid = a.entries
        pick = lambda v, i: grid[i - 1][v - 1]  # noqa: E731
    out = {}
    for v in range(1, size + 1):
        lst = []
        for i in range(1, size + 1):
            g = pick(v, i)
            for k, c in g.terms.items():
                lst.append((i, k, c, popcount(k) & 1))
        out[v] = lst
    return out


def gl_action(a: SuperMatrix, t: SuperTensor) -> SuperTensor:
    """Factorwise action of ``a`` expanded to right-normal form.

    Positions are transformed one at a time; the new coefficient produced at
    position ``k`` is carried past the remaining factors and multiplied onto the
    left of the accumulated coefficient.
    """
    sig = t.signature
    if (a.m, a.n) != (sig.m, sig.n):
        raise ShapeMismatch(f"({a.m}|{a.n}) matrix on a ({sig.m}|{sig.n}) tensor")
    if a.num_generators != t.num_generators:
        raise GeneratorMismatch("matrix and tensor over different Grassmann algebras")
    m = sig.m
    cov = _images(a, dual=False) if "c" in sig.variance else None
    dual = _images(a, dual=True) if "u" in sig.variance else None
    state: Flat = t.flat()
    for k, var in enumerate(sig.variance):
        images = cov if var == "c" else dual
        is_dual = var == "u"
        new: Flat = {}
        for (w, mono), c in state.items():
            suffix = sum(1 for x in w[k + 1:] if x > m) & 1
            head, tail = w[:k], w[k + 1:]
            for i, k2, c2, p2 in images[w[k]]:
                s = monomial_sign(k2, mono)
                if not s:
                    continue
                if p2 and (suffix ^ (is_dual and i > m)):
                    s = -s
                key = (head + (i,) + tail, k2 | mono)
                val = new.get(key, 0) + (c * c2 if s > 0 else -(c * c2))
                if val:
                    new[key] = val
                else:
                    del new[key]
        state = new
    return SuperTensor.from_flat(sig, state, t.num_generators)


# -- pairing and concatenation --------------------------------------------------------

def _word_pairing_sign(word: Word, m: int) -> int:
    odd = [x > m for x in word]
    chi = 0
    seen_odd = 0
    for o in odd:
        if o:
            chi += seen_odd
            seen_odd += 1
    return -1 if chi & 1 else 1


def pairing(u: SuperTensor, w: SuperTensor) -> Grassmann:
    """Duality pairing of a contravariant tensor with a covariant one.

    On basis words ``(u*_1...u*_l, w_1...w_l) = (-1)^chi prod (u*_k, w_k)`` with
    ``chi`` the number of pairs ``i < j`` with ``w_i`` and ``u*_j`` both odd;
    coefficients satisfy ``(U c, W d) = (-1)^(|c||U|) (U, W) c d``.
    """
    if not u.signature.is_contravariant or not w.signature.is_covariant:
        raise ShapeMismatch("pairing needs (contravariant, covariant) arguments")
    if (u.signature.l, u.m, u.n) != (w.signature.l, w.m, w.n):
        raise ShapeMismatch("pairing of tensors with different lengths or dims")
    if u.num_generators != w.num_generators:
        raise GeneratorMismatch("tensors over different Grassmann algebras")
    m = u.m
    out: dict[int, Fraction] = {}
    wflat: dict[Word, list[tuple[int, Fraction]]] = {}
    for (word, k), v in w.flat().items():
        wflat.setdefault(word, []).append((k, v))
    for (word, kc), vc in u.flat().items():
        partners = wflat.get(word)
        if not partners:
            continue
        sign = _word_pairing_sign(word, m)
        if popcount(kc) & word_parity(word, m):
            sign = -sign
        for kd, vd in partners:
            s = monomial_sign(kc, kd)
            if s:
                out[kc | kd] = out.get(kc | kd, 0) + s * sign * vc * vd
    return Grassmann({k: v for k, v in out.items() if v}, u.num_generators)


def tensor_concat(a: SuperTensor, b: SuperTensor) -> SuperTensor:
    """``(W1 c)(W2 d) = (-1)^(|c||W2|) W1 W2 c d``."""
    sig = a.signature + b.signature
    if a.num_generators != b.num_generators:
        raise GeneratorMismatch("tensors over different Grassmann algebras")
    m = sig.m
    flat: Flat = {}
    bflat = b.flat()
    for (w1, k1), v1 in a.flat().items():
        p1 = popcount(k1) & 1
        for (w2, k2), v2 in bflat.items():
            s = monomial_sign(k1, k2)
            if not s:
                continue
            if p1 and word_parity(w2, m):
                s = -s
            key = (w1 + w2, k1 | k2)
            flat[key] = flat.get(key, 0) + s * v1 * v2
    return SuperTensor.from_flat(sig, flat, a.num_generators)


def split_covariant(t: SuperTensor) -> int:
    """Length of the covariant block of a mixed signature."""
    return t.signature.variance.count("c")


# -- coordinates in a basis ------------------------------------------------------------

class BasisSolver:
    """Solve ``t = sum_i basis_i * c_i`` for rational-coefficient basis tensors."""

    def __init__(self, basis: Sequence[SuperTensor]):
        if not basis:
            raise ValueError("empty basis")
        self.signature = basis[0].signature
        self.num_generators = basis[0].num_generators
        for b in basis:
            if b.signature != self.signature:
                raise ShapeMismatch("basis tensors with different signatures")
        self.vectors = [b.rational_vector() for b in basis]
        k = len(self.vectors)
        # sparse Gauss-Jordan over the basis vectors, tracking the combinations used
        rows: list[dict[Word, Fraction]] = [dict(v) for v in self.vectors]
        combos: list[dict[int, Fraction]] = [{i: Fraction(1)} for i in range(k)]
        pivots: list[Word] = []
        for r in range(k):
            if not rows[r]:
                raise DependentBasis(f"basis tensor {r + 1} depends on the others")
            piv = min(rows[r])
            inv = 1 / rows[r][piv]
            rows[r] = {w: x * inv for w, x in rows[r].items()}
            combos[r] = {i: x * inv for i, x in combos[r].items()}
            for s in range(k):
                if s == r:
                    continue
                f = rows[s].get(piv)
                if not f:
                    continue
                _axpy(rows[s], rows[r], -f)
                _axpy(combos[s], combos[r], -f)
            pivots.append(piv)
        self.pivots = pivots
        self.combos = combos

    def solve_rational(self, target: Mapping[Word, Fraction]) -> list[Fraction] | None:
        """Rational coordinates of ``target``, or ``None`` if it leaves the span."""
        coords = [Fraction(0)] * len(self.vectors)
        for piv, combo in zip(self.pivots, self.combos):
            y = target.get(piv)
            if y:
                for i, x in combo.items():
                    coords[i] += y * x
        residual = dict(target)
        for c, vec in zip(coords, self.vectors):
            if c:
                _axpy(residual, vec, -c)
        if any(residual.values()):
            return None
        return coords

    def solve(self, t: SuperTensor) -> list[Grassmann]:
        if t.signature != self.signature:
            raise ShapeMismatch(f"{t.signature} vs basis signature {self.signature}")
        per_mono: dict[int, dict[Word, Fraction]] = {}
        for (w, k), v in t.flat().items():
            per_mono.setdefault(k, {})[w] = v
        coef_terms: list[dict[int, Fraction]] = [{} for _ in self.vectors]
        for k, target in per_mono.items():
            coords = self.solve_rational(target)
            if coords is None:
                raise SpanViolation("tensor component lies outside the span of the basis")
            for i, c in enumerate(coords):
                if c:
                    coef_terms[i][k] = c
        return [Grassmann._raw(ct, t.num_generators) for ct in coef_terms]


def _axpy(y: dict, x: Mapping, a: Fraction) -> None:
    for key, v in x.items():
        s = y.get(key, 0) + a * v
        if s:
            y[key] = s
        else:
            y.pop(key, None)


def express_in_basis(t: SuperTensor, basis: Sequence[SuperTensor]) -> list[Grassmann]:
    return BasisSolver(basis).solve(t)


def combine(basis: Sequence[SuperTensor], coefs: Iterable[Grassmann]) -> SuperTensor:
    """``sum_i basis_i * coefs_i``."""
    basis = list(basis)
    total = SuperTensor.zero(basis[0].signature, basis[0].num_generators)
    for b, c in zip(basis, coefs):
        if c:
            total = total + b * c
    return total
