"""Gap sets and weights of the (1 - zeta)-torsion classes.

Each class is labelled by residues a in (Z/n)^(d-1).  Its gap set is computed
twice: combinatorially, and from Riemann-Roch dimensions on an actual curve
over a finite field.  The weights add up to g (n + 1) n^(d-1) / 12.
"""

from zetadiv.curve import Curve
from zetadiv.ff import GF
from zetadiv.gaps import all_classes, closed_form_total, gap_set, gap_set_oracle

for n, d, p in [(2, 3, 13), (3, 2, 7), (3, 4, 13), (4, 3, 13)]:
    F = GF(p)
    C = Curve(n, d, [F(a) for a in range(1, d + 1)], F)
    total = 0
    on_theta = 0
    agree = True
    for a in all_classes(n, d):
        prof = gap_set(n, d, a)
        total += prof.weight
        on_theta += prof.weight > 0
        agree &= gap_set_oracle(C, a) == prof.gaps
    print(
        f"n={n} d={d} g={C.genus}: {n ** (d - 1)} classes, {on_theta} with positive weight, "
        f"total weight {total} (closed form {closed_form_total(n, d)}), RR agrees: {agree}"
    )

print("\nthe heaviest classes for (n, d) = (3, 4):")
top = sorted(all_classes(3, 4), key=lambda a: -gap_set(3, 4, a).weight)[:4]
for a in top:
    prof = gap_set(3, 4, a)
    print(f"  a = {a}  gaps {prof.gaps}  partition {prof.partition}  weight {prof.weight}")
