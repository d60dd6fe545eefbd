"""
Knot series at roots of unity
=============================

The Kontsevich-Zagier series F(q) = sum (q)_n does not converge anywhere
inside the unit disk but terminates at every root of unity.  There it agrees
with the colored Jones polynomial of the trefoil and with half the radial
limit of the eta-type theta series, the "strange identity".  The same holds
for the torus knots T(3, 2^t) and Hikami's series for T(2, 2m+1).
"""

from fractions import Fraction

from qmflab.numerics import PrecisionContext
from qmflab.qknots import RootOfUnity, jones_t32, jones_t32t, kz_F, kz_Ft, strange_check, unimodal_coefficients

ctx = PrecisionContext(digits=40)

# exact values in Q(zeta_N)
for N in [2, 3, 5]:
    z = RootOfUnity.primitive(N)
    print(f"F(zeta_{N}) = {kz_F(z).format()}")
    print(f"   zeta F(zeta) == J_N(trefoil): {jones_t32(N) == z.power_exact(1) * kz_F(z)}")

z = RootOfUnity.primitive(6)
print("zeta^3 F_2(zeta) == J_6(T(3,4)):", jones_t32t(2, 6) == z.power_exact(3) * kz_Ft(2, z))

# the strange identities, order 0
for side in ["F", "Ft:2", "Ft:3", "X:2:0", "X:2:1"]:
    for alpha in [Fraction(0), Fraction(1, 3)]:
        rec = strange_check(side, alpha, ctx)
        print(f"{side:6} alpha = {str(alpha):4} residual {ctx.mp.nstr(rec.residual, 3):>10}  {rec.note}")

# odd-balanced unimodal sequences: both sides as q-series
for e, lhs, rhs in unimodal_coefficients(6):
    print(f"q^{e}: {lhs} {rhs}")
