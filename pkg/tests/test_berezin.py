import random
from fractions import Fraction

import pytest

from superber.berezin import (build_btilde, build_btilde_star, build_invariant, contraction,
                              rep_matrix, verify_theorem21)
from superber.errors import ShapeMismatch
from superber.grassmann import Grassmann
from superber.supermatrix import (SuperMatrix, available_classes, berezinian, g0_det, gen_matrix,
                                  random_generator, random_invertible)
from superber.supertensor import (Signature, SuperTensor, apply_symmetrizer, gl_action, pairing,
                                  tensor_concat, to_text)
from superber.symtab import Tableau, young_symmetrizer

NG = 4
E, EPS = 1, 2
HALF = Fraction(1, 2)
SMALL = [(1, 1), (2, 1), (1, 2)]


def g(i):
    return Grassmann.generator(i, NG)


def tensor(variance, terms, m=1, n=1):
    return SuperTensor(Signature(variance, m, n), terms, NG)


def naive_contraction(x, y):
    """Pair every term of ``x`` against every term of ``y`` through ``pairing``."""
    a = x.signature.variance.count("c")
    b = x.signature.l - a
    m, n = x.m, x.n
    total = Grassmann.zero(NG)
    one = Grassmann.scalar(1, NG)
    for wx, c in x.terms.items():
        x1, x2 = wx[:a], wx[a:]
        for wy, d in y.terms.items():
            y1, y2 = wy[:b], wy[b:]
            p1 = pairing(SuperTensor(Signature("u" * b, m, n), {x2: one}, NG),
                         SuperTensor(Signature("c" * b, m, n), {y1: one}, NG))
            p2 = pairing(SuperTensor(Signature("u" * a, m, n), {y2: one}, NG),
                         SuperTensor(Signature("c" * a, m, n), {x1: one}, NG))
            odd_y = sum(1 for k in wy if k > m) % 2
            # move c across Y1 Y2*
            moved = Grassmann.zero(NG)
            for mask, v in c.terms.items():
                s = -1 if bin(mask).count("1") % 2 and odd_y else 1
                moved = moved + Grassmann({mask: v * s}, NG)
            total = total + p1 * p2 * moved * d
    return total


class TestRepMatrix:
    def test_identity(self):
        for kind in ("h_prime", "g"):
            assert rep_matrix(SuperMatrix.identity(1, 1, NG), kind).is_identity()
            assert rep_matrix(SuperMatrix.identity(2, 1, NG), kind).size == 4

    def test_odd_upper_example(self):
        a = gen_matrix("odd_upper", 1, 1, i=1, j=2, param=g(1), num_generators=NG)
        ag, ah = rep_matrix(a, "g"), rep_matrix(a, "h_prime")
        one, zero = Grassmann.scalar(1, NG), Grassmann.zero(NG)
        assert ag.entries == ((one, -2 * g(1)), (zero, one))
        assert ah.entries == ag.entries

    def test_bad_kind(self):
        with pytest.raises(ValueError):
            rep_matrix(SuperMatrix.identity(1, 1, NG), "h")

    def test_mismatched_bases(self):
        eye = SuperMatrix.identity(1, 1, NG)
        with pytest.raises(ShapeMismatch):
            rep_matrix(eye, "g") @ rep_matrix(eye, "h_prime")

    @pytest.mark.parametrize("m,n", SMALL)
    def test_homomorphy(self, m, n):
        for seed in range(2):
            a = random_invertible(m, n, NG, seed=seed)
            b = random_invertible(m, n, NG, seed=seed + 100)
            for kind in ("h_prime", "g"):
                assert rep_matrix(a @ b, kind).entries == (rep_matrix(a, kind) @ rep_matrix(b, kind)).entries


class TestTheorem21:
    @pytest.mark.parametrize("m,n", SMALL)
    def test_generator_classes(self, m, n):
        rng = random.Random(f"t21:{m}:{n}")
        for kind in available_classes(m, n):
            a = random_generator(kind, m, n, rng, NG)
            report = verify_theorem21(a, kind)
            assert report["pass"], report["failures"]
            if kind != "diag":
                assert report["h_prime_equals_g"]

    def test_diag_scales(self):
        a = gen_matrix("diag", 1, 1, x=[2], y=[3], num_generators=NG)
        report = verify_theorem21(a)
        assert report["pass"] and not report["h_prime_equals_g"]
        assert report["berezinian"] == "2/3"

    @pytest.mark.parametrize("m,n", SMALL)
    def test_products(self, m, n):
        rng = random.Random(f"t21p:{m}:{n}")
        classes = available_classes(m, n)
        for _ in range(3):
            a = SuperMatrix.identity(m, n, NG)
            for _ in range(3):
                a = a @ random_generator(rng.choice(classes), m, n, rng, NG)
            assert verify_theorem21(a)["pass"]

    def test_failure_is_reported(self, monkeypatch):
        import superber.berezin as bz

        monkeypatch.setattr(bz, "berezinian", lambda a, formula="first": Grassmann.scalar(2, NG))
        report = bz.verify_theorem21(SuperMatrix.identity(1, 1, NG))
        assert not report["pass"] and report["failures"][0]["i"] == 1


class TestExampleTensors:
    def test_btilde_one_one(self):
        bt = build_btilde(1, 1, NG)
        assert bt.body == tensor("ccuu", {(E, E, E, EPS): 1, (E, E, EPS, E): -1,
                                          (E, EPS, EPS, EPS): 1, (EPS, E, EPS, EPS): 1})
        assert to_text(bt.body) == "1 e e e* eps* + (-1) e e eps* e* + 1 e eps eps* eps* + 1 eps e eps* eps*"

    def test_btilde_star_one_one(self):
        bs = build_btilde_star(1, 1, NG)
        assert bs.body == tensor("ccuu", {(E, EPS, E, E): HALF, (EPS, E, E, E): -HALF,
                                          (EPS, EPS, EPS, E): -HALF, (EPS, EPS, E, EPS): -HALF})

    def test_invariant_g_one_one(self):
        g1 = tensor("cc", {(E, EPS): 1, (EPS, E): -1})
        g1s = tensor("uu", {(E, EPS): HALF, (EPS, E): -HALF})
        g2 = tensor("cc", {(EPS, EPS): 2})
        g2s = tensor("uu", {(EPS, EPS): -HALF})
        assert build_invariant(1, 1, "g", NG) == tensor_concat(g1, g1s) + tensor_concat(g2, g2s)

    def test_invariant_bad_kind(self):
        with pytest.raises(ValueError):
            build_invariant(1, 1, "x", NG)

    @pytest.mark.parametrize("m,n", SMALL + [(2, 0), (0, 2)])
    def test_signatures(self, m, n):
        lh, lg = m * (n + 1), (m + 1) * n
        assert build_btilde(m, n, NG).body.signature.variance == "c" * lh + "u" * lg
        assert build_btilde_star(m, n, NG).body.signature.variance == "c" * lg + "u" * lh
        assert not build_btilde(m, n, NG).body.is_zero()


class TestCharacters:
    @pytest.mark.parametrize("m,n,trials", [(1, 1, 10), (2, 1, 2), (1, 2, 2)])
    def test_theorems(self, m, n, trials):
        bt, bs = build_btilde(m, n, NG).body, build_btilde_star(m, n, NG).body
        inv_g, inv_h = build_invariant(m, n, "g", NG), build_invariant(m, n, "h", NG)
        for seed in range(trials):
            a = random_invertible(m, n, NG, seed=seed)
            ber = berezinian(a)
            assert gl_action(a, bt) == bt * ber
            assert gl_action(a, bs) == bs * ber.inverse()
            assert gl_action(a, inv_g) == inv_g
            assert gl_action(a, inv_h) == inv_h

    def test_odd_generator_at_one_one(self):
        bt = build_btilde(1, 1, NG).body
        a = gen_matrix("odd_lower", 1, 1, i=2, j=1, param=g(2), num_generators=NG)
        assert gl_action(a, bt) == bt

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_even_degeneration(self, m):
        bt = build_btilde(m, 0, NG).body
        word = tuple(range(1, m + 1))
        anti = apply_symmetrizer(young_symmetrizer(Tableau((1,) * m)),
                                 SuperTensor.basis_word(Signature.covariant(m, m, 0), word, 1, NG))
        ratio = bt.terms[word]
        assert ratio.is_scalar() and ratio != 0
        assert bt == anti * ratio.body
        bs = build_btilde_star(m, 0, NG).body
        assert bs.signature.variance == "u" * m
        for seed in range(3):
            a = random_invertible(m, 0, NG, seed=seed)
            det = g0_det(a.entries, NG)
            assert gl_action(a, bt) == bt * det
            assert gl_action(a, bs) == bs * det.inverse()

    @pytest.mark.parametrize("n", [1, 2])
    def test_odd_degeneration(self, n):
        bt = build_btilde(0, n, NG).body
        assert bt.signature.variance == "u" * n
        for seed in range(3):
            a = random_invertible(0, n, NG, seed=seed)
            assert gl_action(a, bt) == bt * berezinian(a)


class TestContraction:
    @pytest.mark.parametrize("m,n", SMALL + [(2, 0), (0, 2), (1, 0)])
    def test_matches_naive(self, m, n):
        bt, bs = build_btilde(m, n, NG).body, build_btilde_star(m, n, NG).body
        assert contraction(bt, bs) == naive_contraction(bt, bs)

    @pytest.mark.parametrize("m,n,value", [(1, 1, 2), (2, 1, 4), (1, 2, 4), (2, 0, 1), (0, 2, 1),
                                           (3, 0, 1), (2, 2, 16)])
    def test_constant(self, m, n, value):
        assert contraction(build_btilde(m, n, NG).body, build_btilde_star(m, n, NG).body) == value

    @pytest.mark.parametrize("m,n", SMALL)
    def test_fixed_by_group(self, m, n):
        bt, bs = build_btilde(m, n, NG).body, build_btilde_star(m, n, NG).body
        c = contraction(bt, bs)
        a = random_invertible(m, n, NG, seed=5)
        assert contraction(gl_action(a, bt), gl_action(a, bs)) == c

    def test_odd_coefficients(self):
        x = tensor("cu", {(EPS, E): g(1)})
        y = tensor("cu", {(E, EPS): g(2)})
        assert contraction(x, y) == naive_contraction(x, y)
        assert contraction(x, y) != 0

    def test_shape_checks(self):
        x = tensor("cu", {(E, E): 1})
        with pytest.raises(ShapeMismatch):
            contraction(x, tensor("cc", {(E, E): 1}))


class TestParity:
    @pytest.mark.parametrize("m,n,parity", [(1, 1, 1), (2, 1, 1), (1, 2, 0), (2, 0, 0), (0, 2, 0),
                                            (3, 0, 0), (2, 2, 0)])
    def test_realized_parity(self, m, n, parity):
        assert build_btilde(m, n, NG).parity == parity == build_btilde_star(m, n, NG).parity
