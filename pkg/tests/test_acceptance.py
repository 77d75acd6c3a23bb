"""Acceptance criteria 1-11.  Each test prints one PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import random
import time
from fractions import Fraction

import pytest

from superber.berezin import (build_btilde, build_btilde_star, build_invariant, verify_theorem21)
from superber.canonical import alpha, build_h_prime, enumerate_canonical, star_prime, zeta, zeta_prime
from superber.supermatrix import (available_classes, berezinian, g0_det, ldu_decompose,
                                  random_generator, random_invertible)
from superber.supertensor import (Signature, SuperTensor, apply_symmetrizer, gl_action)
from superber.symtab import (Tableau, lambda_g, lambda_h, mu_constant, standard_tableau,
                             young_symmetrizer)
from superber.verify import (VerifyConfig, check_adjointness, check_gl_commutes,
                             check_group_action, check_large_rectangle, check_skew_and_jacobi,
                             run_suite, shapes_up_to, suite_basis)

NG = 4
DIMS = [(1, 1), (2, 1), (1, 2), (2, 2)]
SMALL = [(1, 1), (2, 1), (1, 2)]
HALF, QUARTER = Fraction(1, 2), Fraction(1, 4)
E, EPS = 1, 2


@pytest.fixture
def verdict(capsys):
    def emit(number, title, ok, seconds, detail=""):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {title} ({seconds:.1f} s)"
        with capsys.disabled():
            print("\n" + line + (f" [{detail}]" if detail else ""))
        assert ok, detail or title
    return emit


def tensor(variance, terms):
    return SuperTensor(Signature(variance, 1, 1), terms, NG)


def pairs_at(m, n, count=100):
    return [(random_invertible(m, n, NG, seed=2 * k), random_invertible(m, n, NG, seed=2 * k + 1))
            for k in range(count)]


def test_01_multiplicativity(verdict):
    start = time.perf_counter()
    bad = [(m, n, k) for m, n in DIMS for k, (a, b) in enumerate(pairs_at(m, n))
           if berezinian(a @ b) != berezinian(a) * berezinian(b)]
    elapsed = time.perf_counter() - start
    verdict(1, "Ber(AB) = Ber A Ber B, 100 pairs at four dims", not bad and elapsed < 10, elapsed,
            f"failures {bad[:5]}" if bad else "")


def test_02_formulas_and_factorizations(verdict):
    start = time.perf_counter()
    bad = []
    for m, n in DIMS:
        for k, pair in enumerate(pairs_at(m, n)):
            for a in pair:
                ber = berezinian(a, "first")
                if ber != berezinian(a, "second"):
                    bad.append((m, n, k, "formulas"))
                for order in ("lower_first", "upper_first"):
                    x, d, z = ldu_decompose(a, order)
                    if x @ d @ z != a:
                        bad.append((m, n, k, order))
                    if g0_det(d.block(1, 1), NG) * g0_det(d.block(2, 2), NG).inverse() != ber:
                        bad.append((m, n, k, order + " det"))
    verdict(2, "both formulas agree, both factorizations reconstruct A", not bad,
            time.perf_counter() - start, str(bad[:5]) if bad else "")


def test_03_basis_ranks(verdict):
    start = time.perf_counter()
    ranks = {}
    for m, n in DIMS:
        recs = suite_basis(VerifyConfig(m, n, NG))
        ranks[(m, n)] = tuple(r["rank"] for r in recs)
    elapsed = time.perf_counter() - start
    expected = {(1, 1): (2, 2), (2, 1): (4, 4), (1, 2): (4, 4), (2, 2): (16, 16)}
    verdict(3, "ranks of h and g are 2, 4, 4, 16", ranks == expected and elapsed < 30, elapsed,
            str(ranks))


def test_04_symmetrizer_constants(verdict):
    start = time.perf_counter()
    bad = []
    for m, n in DIMS:
        for shape in (lambda_g(m, n), lambda_h(m, n)):
            e = young_symmetrizer(standard_tableau(shape))
            mu = mu_constant(shape, "squaring")
            if e * e != e * mu or mu != mu_constant(shape, "closed_form", m, n):
                bad.append((m, n, shape))
    known = mu_constant(lambda_g(1, 1)) == mu_constant(lambda_h(1, 1)) == 2
    verdict(4, "e_T^2 = mu e_T, closed forms, mu = 2 at (1|1)", not bad and known,
            time.perf_counter() - start, str(bad) if bad else "")


def test_05_theorem21(verdict):
    start = time.perf_counter()
    bad = []
    for m, n in SMALL:
        report = run_suite("theorem21", VerifyConfig(m, n, NG, trials=10))
        classes = {r["matrix"] for r in report["records"] if r["check"] == "theorem21.class"}
        products = sum(r["check"] == "theorem21.product" for r in report["records"])
        if not report["pass"] or classes != set(available_classes(m, n)) or products != 10:
            bad.append((m, n))
    small_time = time.perf_counter() - start
    rng = random.Random("acceptance:theorem21:2:2")
    for kind in available_classes(2, 2):
        rep = verify_theorem21(random_generator(kind, 2, 2, rng, NG), kind)
        if not rep["pass"] or (kind != "diag" and not rep["h_prime_equals_g"]):
            bad.append((2, 2, kind))
    elapsed = time.perf_counter() - start
    verdict(5, "A_h' = Ber A A_g for classes and products; A_h' = A_g off-diagonal",
            not bad and small_time < 60 and elapsed < 600, elapsed,
            f"small dims {small_time:.1f} s" + (f"; failures {bad}" if bad else ""))


def test_06_example_one_one(verdict):
    start = time.perf_counter()
    p1, p2 = enumerate_canonical(1, 1)
    checks = [
        build_h_prime(p1, NG) == tensor("cc", {(E, E): 2}),
        build_h_prime(p2, NG) == tensor("cc", {(EPS, E): -2, (E, EPS): -2}),
        star_prime(p1, "g", NG) == tensor("uu", {(E, EPS): HALF, (EPS, E): -HALF}),
        star_prime(p2, "g", NG) == tensor("uu", {(EPS, EPS): -HALF}),
        (zeta(p1), zeta(p2)) == (2, -4),
        build_btilde(1, 1, NG).body == tensor("ccuu", {(E, E, E, EPS): 1, (E, E, EPS, E): -1,
                                                       (E, EPS, EPS, EPS): 1, (EPS, E, EPS, EPS): 1}),
    ]
    verdict(6, "h', g*', zeta and btilde at (1|1)", all(checks), time.perf_counter() - start,
            "" if all(checks) else str(checks))


def test_07_example_star(verdict):
    start = time.perf_counter()
    p1, p2 = enumerate_canonical(1, 1)
    checks = [
        (alpha(p1), alpha(p2)) == (1, -HALF),
        (zeta_prime(p1), zeta_prime(p2)) == (4, 2),
        star_prime(p1, "h", NG) == tensor("uu", {(E, E): HALF}),
        star_prime(p2, "h", NG) == tensor("uu", {(EPS, E): -QUARTER, (E, EPS): -QUARTER}),
        build_btilde_star(1, 1, NG).body == tensor("ccuu", {
            (E, EPS, E, E): HALF, (EPS, E, E, E): -HALF,
            (EPS, EPS, EPS, E): -HALF, (EPS, EPS, E, EPS): -HALF}),
    ]
    verdict(7, "alpha, zeta', h*' and btilde_* at (1|1)", all(checks), time.perf_counter() - start,
            "" if all(checks) else str(checks))


def _character_failures(which):
    bad = []
    for (m, n), trials in (((1, 1), 20), ((2, 1), 5), ((1, 2), 5)):
        if which == "theorems":
            tensors = [(build_btilde(m, n, NG).body, 1), (build_btilde_star(m, n, NG).body, -1)]
        else:
            tensors = [(build_invariant(m, n, "g", NG), 0), (build_invariant(m, n, "h", NG), 0)]
        for seed in range(trials):
            a = random_invertible(m, n, NG, seed=1000 + seed)
            ber = berezinian(a)
            scale = {1: ber, -1: ber.inverse(), 0: ber * ber.inverse()}
            for t, power in tensors:
                if gl_action(a, t) != t * scale[power]:
                    bad.append((m, n, seed, power))
    return bad


def test_08_theorems_31_32(verdict):
    start = time.perf_counter()
    bad = _character_failures("theorems")
    elapsed = time.perf_counter() - start
    verdict(8, "A(btilde) = Ber A btilde, A(btilde_*) = Ber A^-1 btilde_*",
            not bad and elapsed < 120, elapsed, str(bad[:5]) if bad else "")


def test_09_even_degeneration(verdict):
    start = time.perf_counter()
    bad = []
    for m in (1, 2, 3):
        bt = build_btilde(m, 0, NG).body
        word = tuple(range(1, m + 1))
        anti = apply_symmetrizer(young_symmetrizer(Tableau((1,) * m)),
                                 SuperTensor.basis_word(Signature.covariant(m, m, 0), word, 1, NG))
        c = bt.terms.get(word)
        if c is None or not c.is_scalar() or c == 0 or bt != anti * c.body:
            bad.append((m, "multiple"))
        for seed in range(5):
            a = random_invertible(m, 0, NG, seed=seed)
            if gl_action(a, bt) != bt * g0_det(a.entries, NG):
                bad.append((m, seed))
    verdict(9, "btilde at (m|0) is the antisymmetrized e_1...e_m and scales by det",
            not bad, time.perf_counter() - start, str(bad) if bad else "")


def test_10_invariants(verdict):
    start = time.perf_counter()
    bad = _character_failures("invariants")
    verdict(10, "both invariant tensors are fixed", not bad, time.perf_counter() - start,
            str(bad[:5]) if bad else "")


def test_11_structural(verdict):
    start = time.perf_counter()
    rng = random.Random("acceptance:structural")
    bad = {}
    for m, n in SMALL:
        for shape in shapes_up_to(4):
            skew, jac = check_skew_and_jacobi(shape, m, n)
            if skew or jac:
                bad[(m, n, shape)] = (len(skew), len(jac))
        for l in range(1, 5):
            if check_adjointness(l, m, n):
                bad[(m, n, "adjoint", l)] = True
            if check_group_action(l, m, n, rng, NG):
                bad[(m, n, "action", l)] = True
        a = random_invertible(m, n, NG, seed=7)
        for l in range(1, 4):
            if check_gl_commutes(l, a, rng):
                bad[(m, n, "gl", l)] = True
    if check_large_rectangle(1, 1):
        bad["large_rectangle"] = True
    verdict(11, "group action, GL commutes, skew, Jacobi, adjointness, large rectangle",
            not bad, time.perf_counter() - start, str(bad) if bad else "")
