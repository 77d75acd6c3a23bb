"""Representation matrices on W_{lambda_h}, W_{lambda_g} and the Berezinian tensors."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .canonical import basis, build_g, build_h_prime, enumerate_canonical, star_prime
from .errors import GeneratorMismatch, ShapeMismatch
from .grassmann import DEFAULT_GENERATORS, Grassmann, monomial_sign, popcount
from .supermatrix import SuperMatrix, berezinian, grid_mul
from .supertensor import (BasisSolver, SuperTensor, _word_pairing_sign, gl_action, tensor_concat,
                          word_parity)


@lru_cache(maxsize=None)
def _solver(m: int, n: int, kind: str, num_generators: int) -> BasisSolver:
    return BasisSolver(basis(m, n, kind, num_generators))


@dataclass(frozen=True)
class RepMatrix:
    """Matrix of ``A`` on a canonical basis; column ``j`` holds the right
    coefficients of ``A(basis_j)``."""

    basis_kind: str
    entries: tuple[tuple[Grassmann, ...], ...]
    source: SuperMatrix | None = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return len(self.entries)

    def __matmul__(self, other: "RepMatrix") -> "RepMatrix":
        if self.basis_kind != other.basis_kind:
            raise ShapeMismatch("representation matrices on different bases")
        ng = self.entries[0][0].num_generators
        return RepMatrix(self.basis_kind, grid_mul(self.entries, other.entries, ng))

    def scaled(self, c: Grassmann) -> "RepMatrix":
        return RepMatrix(self.basis_kind, tuple(tuple(c * x for x in row) for row in self.entries))

    def is_identity(self) -> bool:
        return all(x == (1 if i == j else 0)
                   for i, row in enumerate(self.entries) for j, x in enumerate(row))


def rep_matrix(a: SuperMatrix, basis_kind: str) -> RepMatrix:
    """Columns are ``express_in_basis(gl_action(a, basis_j))`` for ``h_prime`` or ``g``."""
    if basis_kind not in ("h_prime", "g"):
        raise ValueError(f"basis_kind must be 'h_prime' or 'g', got {basis_kind!r}")
    ng = a.num_generators
    solver = _solver(a.m, a.n, basis_kind, ng)
    cols = [solver.solve(gl_action(a, b)) for b in basis(a.m, a.n, basis_kind, ng)]
    k = len(cols)
    entries = tuple(tuple(cols[j][i] for j in range(k)) for i in range(k))
    return RepMatrix(basis_kind, entries, a)


def verify_theorem21(a: SuperMatrix, label: str | None = None) -> dict:
    """Check ``A_{h'} = Ber A * A_g`` entry by entry."""
    ber = berezinian(a, "checked")
    ah = rep_matrix(a, "h_prime")
    ag = rep_matrix(a, "g")
    failures = []
    for i, (rh, rg) in enumerate(zip(ah.entries, ag.entries)):
        for j, (x, y) in enumerate(zip(rh, rg)):
            if x != ber * y:
                failures.append({"i": i + 1, "j": j + 1, "h_prime": str(x), "ber_times_g": str(ber * y)})
    return {
        "check": "theorem21",
        "m": a.m,
        "n": a.n,
        "matrix": label if label is not None else str(a),
        "berezinian": str(ber),
        "pass": not failures,
        "failures": failures,
        "h_prime_equals_g": ah.entries == ag.entries,
    }


@dataclass(frozen=True)
class BerezinTensor:
    """Mixed tensor realizing the character ``Ber`` (``star=False``) or ``Ber^-1``."""

    m: int
    n: int
    star: bool
    body: SuperTensor

    @property
    def parity(self) -> int | None:
        """Common parity of all terms (word odd letters plus coefficient degree)."""
        pars = self.body.odd_counts()
        return pars.pop() if len(pars) == 1 else None

    def __str__(self):
        return str(self.body)


def _sum(tensors) -> SuperTensor:
    it = iter(tensors)
    total = next(it)
    for t in it:
        total = total + t
    return total


@lru_cache(maxsize=None)
def build_btilde(m: int, n: int, num_generators: int = DEFAULT_GENERATORS) -> BerezinTensor:
    """``sum_i h_i' g_i*'``."""
    pairs = enumerate_canonical(m, n)
    body = _sum(tensor_concat(build_h_prime(p, num_generators), star_prime(p, "g", num_generators))
                for p in pairs)
    return BerezinTensor(m, n, False, body)


@lru_cache(maxsize=None)
def build_btilde_star(m: int, n: int, num_generators: int = DEFAULT_GENERATORS) -> BerezinTensor:
    """``sum_i g_i h_i*'``."""
    pairs = enumerate_canonical(m, n)
    body = _sum(tensor_concat(build_g(p, num_generators), star_prime(p, "h", num_generators))
                for p in pairs)
    return BerezinTensor(m, n, True, body)


@lru_cache(maxsize=None)
def build_invariant(m: int, n: int, kind: str, num_generators: int = DEFAULT_GENERATORS) -> SuperTensor:
    """``sum_i g_i g_i*'`` (kind ``g``) or ``sum_i h_i' h_i*'`` (kind ``h``)."""
    pairs = enumerate_canonical(m, n)
    if kind == "g":
        return _sum(tensor_concat(build_g(p, num_generators), star_prime(p, "g", num_generators))
                    for p in pairs)
    if kind == "h":
        return _sum(tensor_concat(build_h_prime(p, num_generators), star_prime(p, "h", num_generators))
                    for p in pairs)
    raise ValueError(f"kind must be 'g' or 'h', got {kind!r}")


def contraction(x: SuperTensor, y: SuperTensor) -> Grassmann:
    """Full contraction of ``x`` in ``T_a(V) (x) T_b(V*)`` with ``y`` in ``T_b(V) (x) T_a(V*)``.

    Each term pair ``(X1 X2* c, Y1 Y2* d)`` contributes
    ``(X2*, Y1) (Y2*, X1) (-1)^(|c| |Y1 Y2*|) c d``.
    """
    a = x.signature.variance.count("c")
    b = x.signature.l - a
    if y.signature.variance != "c" * b + "u" * a or (x.m, x.n) != (y.m, y.n):
        raise ShapeMismatch("contraction needs T_a(V)T_b(V*) against T_b(V)T_a(V*)")
    if x.num_generators != y.num_generators:
        raise GeneratorMismatch("tensors over different Grassmann algebras")
    m, ng = x.m, x.num_generators
    out: dict[int, Fraction] = {}
    for wx, cx in x.terms.items():
        x1, x2 = wx[:a], wx[a:]
        wy = x2 + x1
        cy = y.terms.get(wy)
        if cy is None:
            continue
        sign = _word_pairing_sign(x2, m) * _word_pairing_sign(x1, m)
        odd_y = word_parity(wy, m)
        for kc, vc in cx.terms.items():
            s0 = -sign if popcount(kc) & odd_y else sign
            for kd, vd in cy.terms.items():
                s = monomial_sign(kc, kd)
                if s:
                    out[kc | kd] = out.get(kc | kd, 0) + s0 * s * vc * vd
    return Grassmann({k: v for k, v in out.items() if v}, ng)
