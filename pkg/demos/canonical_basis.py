"""Canonical fillings at (1|1) and (2|1), with the constants that normalize the bases."""

from superber.canonical import (alpha, build_g, build_h_prime, enumerate_canonical, star_prime,
                                zeta, zeta_prime)
from superber.supertensor import to_text

for m, n in ((1, 1), (2, 1)):
    print(f"-- ({m}|{n}): {2 ** (m * n)} canonical pairs")
    for p in enumerate_canonical(m, n):
        print(f"pair {p.index}: h filling {p.h_filling}, g filling {p.g_filling}")
        print(f"  alpha = {alpha(p)}, zeta = {zeta(p)}, zeta' = {zeta_prime(p)}")
        if (m, n) == (1, 1):
            print("  h'  =", to_text(build_h_prime(p)))
            print("  g   =", to_text(build_g(p)))
            print("  g*' =", to_text(star_prime(p, "g")))
            print("  h*' =", to_text(star_prime(p, "h")))
