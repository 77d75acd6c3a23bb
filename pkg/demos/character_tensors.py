"""The tensors carrying Ber and its inverse, checked against a random group element."""

from superber import berezinian, build_btilde, build_btilde_star, random_invertible
from superber.berezin import contraction
from superber.grassmann import to_text
from superber.supertensor import gl_action

bt = build_btilde(1, 1).body
bs = build_btilde_star(1, 1).body
print("btilde   =", bt)
print("btilde_* =", bs)

a = random_invertible(1, 1, 4, seed=3)
ber = berezinian(a)
print("Ber A =", to_text(ber))
print("A(btilde) == Ber A * btilde:", gl_action(a, bt) == bt * ber)
print("A(btilde_*) == Ber A^-1 * btilde_*:", gl_action(a, bs) == bs * ber.inverse())
print("contraction of btilde with btilde_* =", to_text(contraction(bt, bs)))

for m in (1, 2, 3):
    print(f"classical case ({m}|0):", build_btilde(m, 0).body)
