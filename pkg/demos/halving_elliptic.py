"""Halving a point on an elliptic curve, two ways.

For n = 2 the automorphism zeta is -1, so dividing by 1 - zeta is halving.
We divide P = (0, 6) on y^2 = (x + 1)(x + 4)(x + 9) over F_13 with each of the
four sign choices of the square roots, then double every answer with the
chord-and-tangent law and check that we land back on P.
"""

from zetadiv.curve import Curve
from zetadiv.divide import all_root_choices, divide_point
from zetadiv.ff import GF
from zetadiv.jac import brute_halving

F = GF(13)
C = Curve(2, 3, [F(1), F(4), F(9)], F)
P = C.place(F(0), F(6))
c2, c1 = C.f[2], C.f[1]


def double(x, y):
    lam = (x * x * 3 + c2 * x * 2 + c1) / (y * 2)
    x3 = lam * lam - c2 - x * 2
    return x3, lam * (x - x3) - y


print(f"curve: y^2 = {C.f}   genus {C.genus}")
print(f"P = {P}\n")
print("roots (r1, r2, r3)     D          2D")
for rc in all_root_choices(C, P):
    cert = divide_point(C, P, rc)
    (Q,) = cert.D.support()
    print(f"{str(tuple(int(r) for r in rc.roots)):22s} {str(cert.D):10s} {double(Q.x, Q.y)}")

print(f"\nexhaustive search finds {len(brute_halving(C, P))} halves of P, the same four")
