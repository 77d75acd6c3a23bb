"""Verification suites used by ``superber verify`` and the acceptance tests.

Every suite returns a report ``{"suite", "m", "n", ..., "pass", "records"}``
whose records follow ``{"check", "m", "n", ..., "pass", "failures"}``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .berezin import (build_btilde, build_btilde_star, build_invariant, contraction, rep_matrix,
                      verify_theorem21)
from .canonical import basis
from .grassmann import Grassmann, from_struct, from_text, to_struct, to_text
from .linalg import sparse_rank
from .supermatrix import (available_classes, berezinian, g0_det, ldu_decompose,
                          random_generator, random_invertible, super_inverse)
from .supertensor import (Signature, SuperTensor, apply_symmetrizer, gl_action, pairing,
                          perm_action, right_perm_action)
from .symtab import (Permutation, Tableau, hook_product, lambda_g, lambda_h, large_rectangle,
                     mu_constant, young_symmetrizer)

SUITES = ("grassmann", "berezinian", "symmetrizer", "basis", "theorem21", "theorem31")
MAX_LISTED = 20


@dataclass(frozen=True)
class VerifyConfig:
    m: int = 1
    n: int = 1
    num_generators: int = 4
    seed: int = 0
    trials: int = 20
    extended: bool = False


def record(check: str, m: int, n: int, failures: list, **extra) -> dict:
    out = {"check": check, "m": m, "n": n}
    out.update(extra)
    out["pass"] = not failures
    out["failures"] = failures[:MAX_LISTED]
    if len(failures) > MAX_LISTED:
        out["failure_count"] = len(failures)
    return out


def skipped(check: str, m: int, n: int, reason: str) -> dict:
    return {"check": check, "m": m, "n": n, "skipped": reason, "pass": True, "failures": []}


def _rng(tag: str, cfg: VerifyConfig) -> random.Random:
    return random.Random(f"{tag}:{cfg.m}:{cfg.n}:{cfg.num_generators}:{cfg.seed}")


# -- grassmann -------------------------------------------------------------------

def random_grassmann(rng: random.Random, ng: int, parity: int | None = None,
                     terms: int = 3) -> Grassmann:
    """Sum of up to ``terms`` monomials with small rational coefficients."""
    out = {}
    for _ in range(terms):
        mask = rng.randrange(1 << ng)
        if parity is not None and bin(mask).count("1") % 2 != parity:
            mask ^= 1 << rng.randrange(ng)
        out[mask] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return Grassmann(out, ng)


def suite_grassmann(cfg: VerifyConfig) -> list[dict]:
    rng = _rng("grassmann", cfg)
    ng, m, n = cfg.num_generators, cfg.m, cfg.n
    fails: dict[str, list] = {k: [] for k in
                              ("associativity", "distributivity", "supercommutativity",
                               "inverse", "text_roundtrip", "struct_roundtrip")}
    for t in range(cfg.trials):
        x, y, z = (random_grassmann(rng, ng) for _ in range(3))
        if (x * y) * z != x * (y * z):
            fails["associativity"].append(t)
        if x * (y + z) != x * y + x * z or (x + y) * z != x * z + y * z:
            fails["distributivity"].append(t)
        px, py = rng.randint(0, 1), rng.randint(0, 1)
        a, b = random_grassmann(rng, ng, px), random_grassmann(rng, ng, py)
        if a * b != (-1) ** (px * py) * (b * a):
            fails["supercommutativity"].append(t)
        u = x + rng.randint(1, 5)
        if u.body and (u * u.inverse() != 1 or u.inverse() * u != 1):
            fails["inverse"].append(t)
        if from_text(to_text(x), ng) != x:
            fails["text_roundtrip"].append(t)
        if from_struct(to_struct(x), ng) != x:
            fails["struct_roundtrip"].append(t)
    return [record(f"grassmann.{k}", m, n, v, trials=cfg.trials) for k, v in fails.items()]


# -- berezinian ------------------------------------------------------------------

def random_pair(cfg: VerifyConfig, k: int):
    a = random_invertible(cfg.m, cfg.n, cfg.num_generators, seed=cfg.seed + 2 * k)
    b = random_invertible(cfg.m, cfg.n, cfg.num_generators, seed=cfg.seed + 2 * k + 1)
    return a, b


def suite_berezinian(cfg: VerifyConfig) -> list[dict]:
    m, n, ng = cfg.m, cfg.n, cfg.num_generators
    mult, agree, factor, lemma, inv, degen = [], [], [], [], [], []
    for k in range(cfg.trials):
        a, b = random_pair(cfg, k)
        ber_a, ber_b = berezinian(a), berezinian(b)
        if berezinian(a @ b) != ber_a * ber_b:
            mult.append({"trial": k})
        if berezinian(a, "first") != berezinian(a, "second"):
            agree.append({"trial": k})
        for order in ("lower_first", "upper_first"):
            f1, f2, f3 = ldu_decompose(a, order)
            if f1 @ f2 @ f3 != a:
                factor.append({"trial": k, "order": order})
        _, d, _ = ldu_decompose(a, "lower_first")
        if g0_det(d.block(1, 1), ng) * g0_det(d.block(2, 2), ng).inverse() != ber_a:
            lemma.append({"trial": k})
        a_inv = super_inverse(a)
        if a_inv @ a != a.identity(m, n, ng) or berezinian(a_inv) * ber_a != 1:
            inv.append({"trial": k})
        if n == 0 and ber_a != g0_det(a.entries, ng):
            degen.append({"trial": k})
    t = cfg.trials
    out = [record("berezinian.multiplicativity", m, n, mult, trials=t),
           record("berezinian.formula_agreement", m, n, agree, trials=t),
           record("berezinian.factor_product", m, n, factor, trials=t),
           record("berezinian.factor_determinants", m, n, lemma, trials=t),
           record("berezinian.inverse", m, n, inv, trials=t)]
    if n == 0:
        out.append(record("berezinian.even_degeneration", m, n, degen, trials=t))
    return out


# -- symmetrizers and structural properties ----------------------------------------

def shapes_up_to(l_max: int) -> list[tuple[int, ...]]:
    out = []

    def grow(rest, limit, acc):
        if rest == 0:
            out.append(tuple(acc))
            return
        for part in range(min(rest, limit), 0, -1):
            grow(rest - part, part, acc + [part])

    for l in range(1, l_max + 1):
        grow(l, l, [])
    return out


def _words(l: int, dim: int) -> Iterable[tuple[int, ...]]:
    return itertools.product(range(1, dim + 1), repeat=l)


def jacobi_configurations(t: Tableau):
    """``(column, i_k)`` with ``i_k`` taken from another column of length at most ``len(column)``."""
    for ci, col in enumerate(t.columns):
        for cj, other in enumerate(t.columns):
            if cj != ci and len(other) <= len(col):
                for ik in other:
                    yield col, ik


def check_skew_and_jacobi(shape, m: int, n: int) -> tuple[list, list]:
    t = Tableau(shape)
    e, l = young_symmetrizer(t), t.size
    sig = Signature.covariant(l, m, n)
    skew, jac = [], []
    for w in _words(l, m + n):
        v = SuperTensor.basis_word(sig, w)
        lhs = apply_symmetrizer(e, v)
        for col in t.columns:
            for a, b in itertools.combinations(col, 2):
                if apply_symmetrizer(e, perm_action(Permutation.transposition(l, a, b), v)) != -lhs:
                    skew.append({"word": list(w), "swap": [a, b]})
        for col, ik in jacobi_configurations(t):
            rhs = SuperTensor.zero(sig)
            for ij in col:
                rhs = rhs + apply_symmetrizer(e, perm_action(Permutation.transposition(l, ij, ik), v))
            if rhs != lhs:
                jac.append({"word": list(w), "column": list(col), "i_k": ik})
    return skew, jac


def check_adjointness(l: int, m: int, n: int) -> list:
    """``(u sigma, w) = (u, sigma w)`` for every permutation and basis word.

    Both actions permute basis words up to sign and the pairing only matches
    equal words, so for each ``(sigma, w)`` the single word ``u`` carried by
    ``sigma w`` is the only one with a nonzero side.
    """
    fails = []
    co, contra = Signature.covariant(l, m, n), Signature.contravariant(l, m, n)
    for images in itertools.permutations(range(1, l + 1)):
        sigma = Permutation(images)
        for w in _words(l, m + n):
            wt = SuperTensor.basis_word(co, w)
            sw = perm_action(sigma, wt)
            (u, _), = sw.terms.items()
            ut = SuperTensor.basis_word(contra, u)
            if pairing(right_perm_action(ut, sigma), wt) != pairing(ut, sw):
                fails.append({"sigma": str(sigma), "word": list(w)})
    return fails


def _random_rational_tensor(sig: Signature, rng: random.Random, ng: int) -> SuperTensor:
    return SuperTensor(sig, {w: rng.randint(-3, 3) for w in _words(sig.l, sig.dim)}, ng)


def check_group_action(l: int, m: int, n: int, rng: random.Random, ng: int) -> list:
    fails = []
    t = _random_rational_tensor(Signature.covariant(l, m, n), rng, ng)
    u = _random_rational_tensor(Signature.contravariant(l, m, n), rng, ng)
    perms = [Permutation(p) for p in itertools.permutations(range(1, l + 1))]
    for s in perms:
        for r in perms:
            if perm_action(s * r, t) != perm_action(s, perm_action(r, t)):
                fails.append({"side": "left", "sigma": str(s), "tau": str(r)})
            if right_perm_action(u, s * r) != right_perm_action(right_perm_action(u, s), r):
                fails.append({"side": "right", "sigma": str(s), "tau": str(r)})
    return fails


def check_gl_commutes(l: int, a, rng: random.Random) -> list:
    m, n, ng = a.m, a.n, a.num_generators
    t = _random_rational_tensor(Signature.covariant(l, m, n), rng, ng)
    u = _random_rational_tensor(Signature.contravariant(l, m, n), rng, ng)
    fails = []
    at, au = gl_action(a, t), gl_action(a, u)
    for images in itertools.permutations(range(1, l + 1)):
        s = Permutation(images)
        if gl_action(a, perm_action(s, t)) != perm_action(s, at):
            fails.append({"side": "left", "sigma": str(s)})
        if gl_action(a, right_perm_action(u, s)) != right_perm_action(au, s):
            fails.append({"side": "right", "sigma": str(s)})
    if pairing(au, at) != pairing(u, t):
        fails.append({"pairing_invariance": l})
    return fails


def check_large_rectangle(m: int, n: int) -> list:
    t = Tableau(large_rectangle(m, n))
    e = young_symmetrizer(t)
    sig = Signature.covariant(t.size, m, n)
    return [list(w) for w in _words(t.size, m + n)
            if not apply_symmetrizer(e, SuperTensor.basis_word(sig, w)).is_zero()]


def suite_symmetrizer(cfg: VerifyConfig) -> list[dict]:
    m, n, ng = cfg.m, cfg.n, cfg.num_generators
    out = []
    for name, shape in (("lambda_g", lambda_g(m, n)), ("lambda_h", lambda_h(m, n))):
        squared = mu_constant(shape, "squaring")
        closed = mu_constant(shape, "closed_form", m, n)
        fails = [] if squared == closed == hook_product(shape) else [
            {"squaring": str(squared), "closed_form": str(closed), "hook": hook_product(shape)}]
        out.append(record(f"symmetrizer.mu_{name}", m, n, fails, shape=list(shape), mu=str(squared)))
    rng = _rng("symmetrizer", cfg)
    skew, jac = [], []
    for shape in shapes_up_to(4):
        s, j = check_skew_and_jacobi(shape, m, n)
        skew += [dict(f, shape=list(shape)) for f in s]
        jac += [dict(f, shape=list(shape)) for f in j]
    out.append(record("symmetrizer.column_skew", m, n, skew, max_l=4))
    out.append(record("symmetrizer.jacobi", m, n, jac, max_l=4))
    adj = [dict(f, l=l) for l in range(1, 5) for f in check_adjointness(l, m, n)]
    out.append(record("symmetrizer.adjointness", m, n, adj, max_l=4))
    act = [dict(f, l=l) for l in range(1, 4) for f in check_group_action(l, m, n, rng, ng)]
    out.append(record("symmetrizer.group_action", m, n, act, max_l=3))
    a = random_invertible(m, n, ng, seed=cfg.seed)
    com = [dict(f, l=l) for l in range(1, 4) for f in check_gl_commutes(l, a, rng)]
    out.append(record("symmetrizer.gl_commutes", m, n, com, max_l=3))
    if (m + 1) * (n + 1) <= 6:
        out.append(record("symmetrizer.large_rectangle", m, n, check_large_rectangle(m, n),
                          shape=list(large_rectangle(m, n))))
    return out


# -- canonical basis ranks ---------------------------------------------------------

def suite_basis(cfg: VerifyConfig) -> list[dict]:
    m, n, ng = cfg.m, cfg.n, cfg.num_generators
    expected = 2 ** (m * n)
    out = []
    for kind in ("h", "g"):
        vectors = [t.rational_vector() for t in basis(m, n, kind, ng)]
        r = sparse_rank(vectors)
        fails = [] if r == len(vectors) == expected else [{"rank": r, "count": len(vectors)}]
        out.append(record(f"basis.rank_{kind}", m, n, fails, rank=r, expected=expected))
    return out


# -- representation matrices ------------------------------------------------------

def _fresh(rng: random.Random, ng: int) -> list[int]:
    pool = list(range(1, ng + 1))
    rng.shuffle(pool)
    return pool


def random_product(cfg: VerifyConfig, rng: random.Random, length: int = 3):
    m, n, ng = cfg.m, cfg.n, cfg.num_generators
    classes = available_classes(m, n)
    kinds = [rng.choice(classes) for _ in range(length)]
    mats = [random_generator(k, m, n, rng, ng) for k in kinds]
    prod = mats[0]
    for x in mats[1:]:
        prod = prod @ x
    return kinds, prod


def suite_theorem21(cfg: VerifyConfig) -> list[dict]:
    m, n, ng = cfg.m, cfg.n, cfg.num_generators
    if (m, n) == (2, 2) and not cfg.extended:
        return [skipped("theorem21", m, n, "(2|2) needs --extended")]
    rng = _rng("theorem21", cfg)
    out = []
    for kind in available_classes(m, n):
        a = random_generator(kind, m, n, rng, ng, fresh=_fresh(rng, ng))
        rep = verify_theorem21(a, label=kind)
        fails = list(rep["failures"])
        if kind != "diag" and not rep["h_prime_equals_g"]:
            fails.append({"h_prime_equals_g": False})
        out.append(record("theorem21.class", m, n, fails, matrix=kind, berezinian=rep["berezinian"]))
    products = 1 if (m, n) == (2, 2) else cfg.trials
    for k in range(products):
        kinds, a = random_product(cfg, rng)
        rep = verify_theorem21(a, label="*".join(kinds))
        out.append(record("theorem21.product", m, n, rep["failures"], matrix=rep["matrix"],
                          berezinian=rep["berezinian"]))
    homo = []
    for k in range(min(cfg.trials, 2)):
        a, b = random_pair(cfg, k)
        for kind in ("h_prime", "g"):
            if rep_matrix(a @ b, kind).entries != (rep_matrix(a, kind) @ rep_matrix(b, kind)).entries:
                homo.append({"trial": k, "basis": kind})
    out.append(record("theorem21.homomorphy", m, n, homo, trials=min(cfg.trials, 2)))
    return out


# -- character and invariant tensors ------------------------------------------------

def contraction_constant(m: int, n: int) -> int:
    """Frozen value of the full contraction of ``btilde`` with ``btilde_star``."""
    return 2 ** (m * n)


def theorem31_checks(a, btilde, bstar, inv_g, inv_h) -> dict[str, bool]:
    ber = berezinian(a)
    return {
        "theorem31": gl_action(a, btilde) == btilde * ber,
        "theorem32": gl_action(a, bstar) == bstar * ber.inverse(),
        "invariant_g": gl_action(a, inv_g) == inv_g,
        "invariant_h": gl_action(a, inv_h) == inv_h,
    }


def suite_theorem31(cfg: VerifyConfig) -> list[dict]:
    m, n, ng = cfg.m, cfg.n, cfg.num_generators
    if (m, n) == (2, 2) and not cfg.extended:
        return [skipped("theorem31", m, n, "(2|2) needs --extended")]
    bt, bs = build_btilde(m, n, ng), build_btilde_star(m, n, ng)
    inv_g, inv_h = build_invariant(m, n, "g", ng), build_invariant(m, n, "h", ng)
    if (m, n) == (2, 2):
        # a dense A expands each 12-letter word into millions of terms; act by
        # one sparse generator per class instead (they generate the group)
        rng = _rng("theorem31", cfg)
        samples = [(kind, random_generator(kind, m, n, rng, ng)) for kind in available_classes(m, n)]
    else:
        samples = [(k, random_invertible(m, n, ng, seed=cfg.seed + k)) for k in range(cfg.trials)]
    trials = len(samples)
    fails: dict[str, list] = {k: [] for k in ("theorem31", "theorem32", "invariant_g", "invariant_h")}
    for k, a in samples:
        for name, ok in theorem31_checks(a, bt.body, bs.body, inv_g, inv_h).items():
            if not ok:
                fails[name].append({"trial": k})
    out = [record(f"theorem31.{k}", m, n, v, trials=trials) for k, v in fails.items()]
    value = contraction(bt.body, bs.body)
    expected = contraction_constant(m, n)
    out.append(record("theorem31.contraction", m, n,
                      [] if value == expected else [{"value": str(value)}],
                      value=str(value), expected=expected))
    out.append(record("theorem31.parity", m, n, [] if bt.parity is not None else [{"mixed": True}],
                      btilde=bt.parity, btilde_star=bs.parity))
    if n == 0:
        out.append(record("theorem31.even_degeneration", m, n, degeneration_failures(m, ng)))
    return out


def degeneration_failures(m: int, ng: int) -> list:
    """At ``(m|0)`` ``btilde`` is a nonzero multiple of the antisymmetrized ``e_1...e_m``."""
    bt = build_btilde(m, 0, ng).body
    sig = Signature.covariant(m, m, 0)
    anti = apply_symmetrizer(young_symmetrizer(Tableau((1,) * m)),
                             SuperTensor.basis_word(sig, tuple(range(1, m + 1)), 1, ng))
    key = tuple(range(1, m + 1))
    ratio = bt.terms.get(key)
    if bt.is_zero() or ratio is None or not ratio.is_scalar():
        return [{"btilde": str(bt)}]
    if bt != anti * ratio.body:
        return [{"btilde": str(bt), "antisymmetrizer": str(anti)}]
    return []


# -- driver ------------------------------------------------------------------------

RUNNERS: dict[str, Callable[[VerifyConfig], list[dict]]] = {
    "grassmann": suite_grassmann,
    "berezinian": suite_berezinian,
    "symmetrizer": suite_symmetrizer,
    "basis": suite_basis,
    "theorem21": suite_theorem21,
    "theorem31": suite_theorem31,
}


def run_suite(suite: str, cfg: VerifyConfig) -> dict:
    if suite != "all" and suite not in RUNNERS:
        raise ValueError(f"unknown suite {suite!r}")
    names = SUITES if suite == "all" else (suite,)
    records = [r for name in names for r in RUNNERS[name](cfg)]
    return {
        "suite": suite,
        "m": cfg.m,
        "n": cfg.n,
        "gens": cfg.num_generators,
        "seed": cfg.seed,
        "trials": cfg.trials,
        "extended": cfg.extended,
        "pass": all(r["pass"] for r in records),
        "records": records,
    }


def report_text(report: dict) -> str:
    lines = []
    for r in report["records"]:
        status = "SKIP" if "skipped" in r else ("PASS" if r["pass"] else "FAIL")
        label = r.get("matrix", "")
        lines.append(f"{status} {r['check']} ({r['m']}|{r['n']})" + (f" {label}" if label else ""))
        for f in r["failures"]:
            lines.append(f"    {f}")
    verdict = "PASS" if report["pass"] else "FAIL"
    lines.append(f"{verdict} {report['suite']} ({report['m']}|{report['n']}): "
                 f"{sum(r['pass'] for r in report['records'])}/{len(report['records'])} checks")
    return "\n".join(lines) + "\n"
