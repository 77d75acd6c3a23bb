"""Even supermatrices, the Berezinian and the triangular factorizations.

Rows and columns ``0..m-1`` carry the even basis vectors and ``m..m+n-1`` the
odd ones. Public index arguments of :func:`gen_matrix` are 1-based.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

from .errors import (FormulaMismatch, GeneratorMismatch, IndexOutOfRange, NonInvertible,
                     ParityViolation, ShapeMismatch)
from .grassmann import DEFAULT_GENERATORS, Grassmann

Grid = tuple[tuple[Grassmann, ...], ...]


# -- grids over G --------------------------------------------------------------

def _grid(rows) -> Grid:
    return tuple(tuple(r) for r in rows)


def identity_grid(size: int, num_generators: int) -> Grid:
    one = Grassmann.one(num_generators)
    zero = Grassmann.zero(num_generators)
    return _grid([[one if i == j else zero for j in range(size)] for i in range(size)])


def zero_grid(rows: int, cols: int, num_generators: int) -> Grid:
    zero = Grassmann.zero(num_generators)
    return _grid([[zero] * cols for _ in range(rows)])


def grid_mul(a: Grid, b: Grid, num_generators: int) -> Grid:
    inner = len(b)
    cols = len(b[0]) if b else 0
    if a and len(a[0]) != inner:
        raise ShapeMismatch("inner dimensions differ")
    out = []
    for row in a:
        new_row = []
        for j in range(cols):
            acc = Grassmann.zero(num_generators)
            for k in range(inner):
                if row[k] and b[k][j]:
                    acc = acc + row[k] * b[k][j]
            new_row.append(acc)
        out.append(new_row)
    return _grid(out)


def grid_add(a: Grid, b: Grid) -> Grid:
    return _grid([[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)])


def grid_sub(a: Grid, b: Grid) -> Grid:
    return _grid([[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)])


def grid_neg(a: Grid) -> Grid:
    return _grid([[-x for x in row] for row in a])


def _check_even(grid: Grid) -> None:
    for row in grid:
        if len(row) != len(grid):
            raise ShapeMismatch("matrix is not square")
        for x in row:
            if not x.is_even():
                raise ParityViolation(f"odd entry {x} in a G_0 matrix")


def _num_gens(grid: Grid, default: int = DEFAULT_GENERATORS) -> int:
    for row in grid:
        for x in row:
            return x.num_generators
    return default


def _perm_sign(p: Sequence[int]) -> int:
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return -1 if inv & 1 else 1


def g0_det(grid: Grid, num_generators: int | None = None) -> Grassmann:
    """Leibniz determinant of a square matrix over the commutative ring G_0."""
    _check_even(grid)
    ng = num_generators or _num_gens(grid)
    size = len(grid)
    total = Grassmann.zero(ng)
    for p in itertools.permutations(range(size)):
        term = Grassmann.scalar(_perm_sign(p), ng)
        for i, j in enumerate(p):
            term = term * grid[i][j]
            if not term:
                break
        total = total + term
    return total


def g0_inverse(grid: Grid, num_generators: int | None = None) -> Grid:
    """Adjugate over determinant; raises :class:`NonInvertible` on a zero body."""
    _check_even(grid)
    ng = num_generators or _num_gens(grid)
    size = len(grid)
    det = g0_det(grid, ng)
    if not det.body:
        raise NonInvertible("determinant has zero body")
    det_inv = det.inverse()
    if size == 0:
        return ()
    out = []
    for i in range(size):
        row = []
        for j in range(size):
            # cofactor C_{ji}
            minor = _grid([[grid[r][c] for c in range(size) if c != i]
                           for r in range(size) if r != j])
            cof = g0_det(minor, ng) if size > 1 else Grassmann.one(ng)
            if (i + j) & 1:
                cof = -cof
            row.append(cof * det_inv)
        out.append(row)
    return _grid(out)


# -- supermatrices -------------------------------------------------------------

@dataclass(frozen=True)
class SuperMatrix:
    """Element of M_{m,n}: even diagonal blocks, odd off-diagonal blocks."""

    m: int
    n: int
    entries: Grid
    num_generators: int = DEFAULT_GENERATORS

    def __post_init__(self):
        size = self.m + self.n
        if self.m < 0 or self.n < 0:
            raise ShapeMismatch("m and n must be nonnegative")
        entries = _grid(self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) != size or any(len(r) != size for r in entries):
            raise ShapeMismatch(f"expected a {size}x{size} grid")
        for i, row in enumerate(entries):
            for j, x in enumerate(row):
                if x.num_generators != self.num_generators:
                    raise GeneratorMismatch(f"entry ({i},{j}) has {x.num_generators} generators")
                odd_block = (i < self.m) != (j < self.m)
                if odd_block and not x.is_odd():
                    raise ParityViolation(f"entry ({i},{j}) = {x} must be odd")
                if not odd_block and not x.is_even():
                    raise ParityViolation(f"entry ({i},{j}) = {x} must be even")

    @classmethod
    def identity(cls, m: int, n: int, num_generators: int = DEFAULT_GENERATORS) -> "SuperMatrix":
        return cls(m, n, identity_grid(m + n, num_generators), num_generators)

    @classmethod
    def from_blocks(cls, a11: Grid, a12: Grid, a21: Grid, a22: Grid, m: int, n: int,
                    num_generators: int) -> "SuperMatrix":
        rows = [list(a11[i]) + list(a12[i]) for i in range(m)]
        rows += [list(a21[i]) + list(a22[i]) for i in range(n)]
        return cls(m, n, _grid(rows), num_generators)

    @property
    def size(self) -> int:
        return self.m + self.n

    def __getitem__(self, key) -> Grassmann:
        i, j = key
        return self.entries[i][j]

    def block(self, r: int, c: int) -> Grid:
        """Block ``A_rc`` for ``r, c`` in {1, 2}."""
        rows = range(self.m) if r == 1 else range(self.m, self.size)
        cols = range(self.m) if c == 1 else range(self.m, self.size)
        return _grid([[self.entries[i][j] for j in cols] for i in rows])

    @property
    def blocks(self) -> tuple[Grid, Grid, Grid, Grid]:
        return self.block(1, 1), self.block(1, 2), self.block(2, 1), self.block(2, 2)

    def __matmul__(self, other: "SuperMatrix") -> "SuperMatrix":
        return mat_mul(self, other)

    def inverse(self) -> "SuperMatrix":
        return super_inverse(self)

    def berezinian(self, formula: str = "checked") -> Grassmann:
        return berezinian(self, formula)

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]"
                               for row in self.entries) + "]"


def mat_mul(a: SuperMatrix, b: SuperMatrix) -> SuperMatrix:
    if (a.m, a.n) != (b.m, b.n):
        raise ShapeMismatch(f"({a.m}|{a.n}) vs ({b.m}|{b.n})")
    if a.num_generators != b.num_generators:
        raise GeneratorMismatch("matrices over different Grassmann algebras")
    return SuperMatrix(a.m, a.n, grid_mul(a.entries, b.entries, a.num_generators),
                       a.num_generators)


def berezinian(a: SuperMatrix, formula: str = "checked") -> Grassmann:
    """Berezinian by the first block formula, the second one, or both (``checked``)."""
    ng = a.num_generators
    a11, a12, a21, a22 = a.blocks
    if formula not in ("first", "second", "checked"):
        raise ValueError(f"unknown formula {formula!r}")
    if a.n == 0:
        return g0_det(a11, ng)
    if a.m == 0:
        return g0_det(a22, ng).inverse()

    def first():
        a22_inv = g0_inverse(a22, ng)
        schur = grid_sub(a11, grid_mul(grid_mul(a12, a22_inv, ng), a21, ng))
        return g0_det(schur, ng) * g0_det(a22_inv, ng)

    def second():
        a11_inv = g0_inverse(a11, ng)
        schur = grid_sub(a22, grid_mul(grid_mul(a21, a11_inv, ng), a12, ng))
        return g0_det(a11, ng) * g0_det(schur, ng).inverse()

    if formula == "first":
        return first()
    if formula == "second":
        return second()
    x, y = first(), second()
    if x != y:
        raise FormulaMismatch(f"first formula {x} != second formula {y}")
    return x


def ldu_decompose(a: SuperMatrix, order: str = "lower_first"
                  ) -> tuple[SuperMatrix, SuperMatrix, SuperMatrix]:
    """Triangular-diagonal-triangular factors whose product is ``a``.

    ``lower_first``: ``[[E,0],[B21,E]] diag(B11,B22) [[E,B12],[0,E]]`` with
    ``B11 = A11``, ``B12 = A11^-1 A12``, ``B21 = A21 A11^-1``,
    ``B22 = A22 - A21 A11^-1 A12``.
    ``upper_first``: ``[[E,C12],[0,E]] diag(C11,C22) [[E,0],[C21,E]]`` with
    ``C22 = A22``, ``C12 = A12 A22^-1``, ``C21 = A22^-1 A21``,
    ``C11 = A11 - A12 A22^-1 A21``.
    """
    m, n, ng = a.m, a.n, a.num_generators
    a11, a12, a21, a22 = a.blocks
    em, en = identity_grid(m, ng), identity_grid(n, ng)
    z12, z21 = zero_grid(m, n, ng), zero_grid(n, m, ng)
    if order not in ("lower_first", "upper_first"):
        raise ValueError(f"unknown order {order!r}")
    if m == 0 or n == 0:
        # no off-diagonal blocks; the empty factor still has to be invertible
        g0_inverse(a11 if order == "lower_first" else a22, ng)
        eye = SuperMatrix.identity(m, n, ng)
        return eye, a, eye
    if order == "lower_first":
        inv11 = g0_inverse(a11, ng)
        b12 = grid_mul(inv11, a12, ng)
        b21 = grid_mul(a21, inv11, ng)
        b22 = grid_sub(a22, grid_mul(a21, b12, ng))
        lower = SuperMatrix.from_blocks(em, z12, b21, en, m, n, ng)
        diag = SuperMatrix.from_blocks(a11, z12, z21, b22, m, n, ng)
        upper = SuperMatrix.from_blocks(em, b12, z21, en, m, n, ng)
        return lower, diag, upper
    if order == "upper_first":
        inv22 = g0_inverse(a22, ng)
        c12 = grid_mul(a12, inv22, ng)
        c21 = grid_mul(inv22, a21, ng)
        c11 = grid_sub(a11, grid_mul(c12, a21, ng))
        upper = SuperMatrix.from_blocks(em, c12, z21, en, m, n, ng)
        diag = SuperMatrix.from_blocks(c11, z12, z21, a22, m, n, ng)
        lower = SuperMatrix.from_blocks(em, z12, c21, en, m, n, ng)
        return upper, diag, lower
    raise ValueError(f"unknown order {order!r}")


def super_inverse(a: SuperMatrix) -> SuperMatrix:
    """Inverse assembled from the inverted ``lower_first`` factors."""
    m, n, ng = a.m, a.n, a.num_generators
    lower, diag, upper = ldu_decompose(a, "lower_first")
    em, en = identity_grid(m, ng), identity_grid(n, ng)
    z12, z21 = zero_grid(m, n, ng), zero_grid(n, m, ng)
    lower_inv = SuperMatrix.from_blocks(em, z12, grid_neg(lower.block(2, 1)), en, m, n, ng)
    upper_inv = SuperMatrix.from_blocks(em, grid_neg(upper.block(1, 2)), z21, en, m, n, ng)
    diag_inv = SuperMatrix.from_blocks(g0_inverse(diag.block(1, 1), ng), z12, z21,
                                       g0_inverse(diag.block(2, 2), ng), m, n, ng)
    return upper_inv @ diag_inv @ lower_inv


# -- generator classes ---------------------------------------------------------

GENERATOR_CLASSES = ("odd_lower", "odd_upper", "diag", "even_ul", "even_lr")


def gen_matrix(kind: str, m: int, n: int, *, i: int | None = None, j: int | None = None,
               param: Grassmann | None = None, x: Sequence[Grassmann] = (),
               y: Sequence[Grassmann] = (),
               num_generators: int = DEFAULT_GENERATORS) -> SuperMatrix:
    """One of the five generator classes ``E + e_ij * param`` or a diagonal matrix.

    ``odd_lower``: ``m+1 <= i <= m+n``, ``1 <= j <= m``, odd param;
    ``odd_upper``: ``1 <= i <= m``, ``m+1 <= j <= m+n``, odd param;
    ``diag``: even invertible ``x`` (length m) and ``y`` (length n);
    ``even_ul``: ``1 <= i, j <= m``, ``i != j``, even param;
    ``even_lr``: ``m+1 <= i, j <= m+n``, ``i != j``, even param.
    """
    ng = num_generators
    size = m + n
    if kind == "diag":
        if len(x) != m or len(y) != n:
            raise ShapeMismatch("diag needs m even and n odd-coordinate entries")
        vals = [_as_grassmann(v, ng) for v in list(x) + list(y)]
        for v in vals:
            if not v.is_even():
                raise ParityViolation(f"diagonal entry {v} must be even")
            if not v.body:
                raise NonInvertible(f"diagonal entry {v} is not invertible")
        zero = Grassmann.zero(ng)
        rows = [[vals[r] if r == c else zero for c in range(size)] for r in range(size)]
        return SuperMatrix(m, n, _grid(rows), ng)
    if kind not in GENERATOR_CLASSES:
        raise ValueError(f"unknown generator class {kind!r}")
    if i is None or j is None or param is None:
        raise ValueError(f"{kind} needs i, j and param")
    param = _as_grassmann(param, ng)
    even_rows, odd_rows = range(1, m + 1), range(m + 1, m + n + 1)
    allowed = {
        "odd_lower": (odd_rows, even_rows, True),
        "odd_upper": (even_rows, odd_rows, True),
        "even_ul": (even_rows, even_rows, False),
        "even_lr": (odd_rows, odd_rows, False),
    }
    rows_ok, cols_ok, odd = allowed[kind]
    if i not in rows_ok or j not in cols_ok or (not odd and i == j):
        raise IndexOutOfRange(f"({i},{j}) not allowed for {kind} at ({m}|{n})")
    if odd and not param.is_odd():
        raise ParityViolation(f"{kind} needs an odd parameter, got {param}")
    if not odd and not param.is_even():
        raise ParityViolation(f"{kind} needs an even parameter, got {param}")
    grid = [list(r) for r in identity_grid(size, ng)]
    grid[i - 1][j - 1] = param
    return SuperMatrix(m, n, _grid(grid), ng)


def _as_grassmann(v, ng: int) -> Grassmann:
    if isinstance(v, Grassmann):
        if v.num_generators != ng:
            raise GeneratorMismatch("parameter over a different Grassmann algebra")
        return v
    if isinstance(v, float):
        raise TypeError("floating-point entries are not accepted; use int or Fraction")
    return Grassmann.scalar(v, ng)


# -- random sampling -----------------------------------------------------------

_SMALL = (-3, -2, -1, 1, 2, 3)


def _random_soul(rng: random.Random, ng: int, odd: bool, soul_terms: int) -> Grassmann:
    terms = {}
    for _ in range(rng.randint(0, soul_terms)):
        if odd:
            mask = 1 << rng.randrange(ng)
        else:
            if ng < 2:
                continue
            a, b = rng.sample(range(ng), 2)
            mask = (1 << a) | (1 << b)
        terms[mask] = terms.get(mask, 0) + rng.choice(_SMALL)
    return Grassmann(terms, ng)


def random_invertible(m: int, n: int, num_generators: int = DEFAULT_GENERATORS,
                      seed: int = 0, soul_terms: int = 2) -> SuperMatrix:
    """Deterministic pseudo-random element of GL_{m,n} for a given seed.

    Even-block bodies are small integers (nonzero on the diagonal), souls carry at
    most ``soul_terms`` monomials of degree 1 (odd blocks) or 2 (even blocks).
    """
    rng = random.Random(f"gl:{m}:{n}:{num_generators}:{seed}:{soul_terms}")
    ng = num_generators
    size = m + n
    while True:
        rows = []
        for r in range(size):
            row = []
            for c in range(size):
                odd = (r < m) != (c < m)
                soul = _random_soul(rng, ng, odd, soul_terms)
                if odd:
                    row.append(soul)
                else:
                    body = rng.choice(_SMALL) if r == c else rng.choice((0,) + _SMALL)
                    row.append(soul + body)
            rows.append(row)
        a = SuperMatrix(m, n, _grid(rows), ng)
        a11, _, _, a22 = a.blocks
        if g0_det(a11, ng).body and g0_det(a22, ng).body:
            return a


def random_generator(kind: str, m: int, n: int, rng: random.Random,
                     num_generators: int = DEFAULT_GENERATORS,
                     fresh: list[int] | None = None) -> SuperMatrix:
    """Random member of a generator class with symbolic parameters.

    Odd parameters are single generators; even parameters are ``1 + eta_a eta_b``
    or a small integer. ``fresh`` is a pool of unused generator indices consumed
    front to back; when absent or exhausted generators are drawn at random.
    """
    ng = num_generators

    def gen_index() -> int:
        if fresh:
            return fresh.pop(0)
        return rng.randint(1, ng)

    def odd_param() -> Grassmann:
        return Grassmann.generator(gen_index(), ng) * rng.choice(_SMALL)

    def even_param(invertible: bool) -> Grassmann:
        if rng.random() < 0.5 or ng < 2:
            return Grassmann.scalar(rng.choice(_SMALL), ng)
        a = gen_index()
        b = gen_index()
        if a == b:
            b = a % ng + 1
        base = Grassmann.scalar(rng.choice(_SMALL) if invertible else rng.choice((0,) + _SMALL), ng)
        return base + Grassmann.monomial([a, b], 1, ng)

    if kind == "diag":
        return gen_matrix("diag", m, n, x=[even_param(True) for _ in range(m)],
                          y=[even_param(True) for _ in range(n)], num_generators=ng)
    if kind == "odd_lower":
        i, j = rng.randint(m + 1, m + n), rng.randint(1, m)
        return gen_matrix(kind, m, n, i=i, j=j, param=odd_param(), num_generators=ng)
    if kind == "odd_upper":
        i, j = rng.randint(1, m), rng.randint(m + 1, m + n)
        return gen_matrix(kind, m, n, i=i, j=j, param=odd_param(), num_generators=ng)
    if kind == "even_ul":
        i, j = rng.sample(range(1, m + 1), 2)
        return gen_matrix(kind, m, n, i=i, j=j, param=even_param(False), num_generators=ng)
    if kind == "even_lr":
        i, j = rng.sample(range(m + 1, m + n + 1), 2)
        return gen_matrix(kind, m, n, i=i, j=j, param=even_param(False), num_generators=ng)
    raise ValueError(f"unknown generator class {kind!r}")


def available_classes(m: int, n: int) -> list[str]:
    """Generator classes that have at least one admissible index pair at ``(m|n)``."""
    out = []
    if m and n:
        out += ["odd_lower", "odd_upper"]
    out.append("diag")
    if m >= 2:
        out.append("even_ul")
    if n >= 2:
        out.append("even_lr")
    return [k for k in GENERATOR_CLASSES if k in out]


def fraction_matrix(rows: Sequence[Sequence], m: int, n: int,
                    num_generators: int = DEFAULT_GENERATORS) -> SuperMatrix:
    """Supermatrix from a grid of numbers or Grassmann elements."""
    return SuperMatrix(m, n, _grid([[_as_grassmann(v, num_generators) for v in row]
                                    for row in rows]), num_generators)
