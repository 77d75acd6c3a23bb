"""Berezinians of small supermatrices over a Grassmann algebra with four generators."""

from superber import Grassmann, SuperMatrix, berezinian, ldu_decompose, random_invertible
from superber.grassmann import to_text

NG = 4
g1, g2 = Grassmann.generator(1, NG), Grassmann.generator(2, NG)
one = Grassmann.scalar(1, NG)

# odd off-diagonal entries leave a nilpotent correction
a = SuperMatrix(1, 1, ((one, g1), (g2, one)), NG)
print("A =", a)
print("Ber A (first formula)  =", to_text(berezinian(a, "first")))
print("Ber A (second formula) =", to_text(berezinian(a, "second")))

lower, diag, upper = ldu_decompose(a, "lower_first")
print("A = L D U with D =", diag)

b = random_invertible(2, 2, NG, seed=1)
c = random_invertible(2, 2, NG, seed=2)
print("Ber(BC) == Ber B * Ber C at (2|2):", berezinian(b @ c) == berezinian(b) * berezinian(c))
