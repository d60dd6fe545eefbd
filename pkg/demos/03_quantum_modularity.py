"""
Quantum modularity at rational points
=====================================

The radial limits Theta_f(alpha) are defined only at rationals, yet they
transform almost like a modular form: the defect is a period integral r_g
that is smooth in alpha.  We check the weight 3/2 relation for chi12 and the
weight 1/2 relation for a false theta function, and the cocycle property of
the period integrals.
"""

from fractions import Fraction

from qmflab.modgroup import MoebiusMap, multiplier_chi
from qmflab.numerics import PrecisionContext
from qmflab.periodic import char_chi12, char_false_theta
from qmflab.qmf import cocycle_r, qmf_residual_12, qmf_residual_32, theta_value_at_cusp

ctx = PrecisionContext(digits=30)
mp = ctx.mp
f = char_chi12()

# Theta_f(0) from the Eichler integral matches the L-value -2
print("Theta_chi12(0) by quadrature:", mp.nstr(theta_value_at_cusp(f, 0, ctx), 20))

g = MoebiusMap(1, 0, 24, 1)
for alpha in [Fraction(0), Fraction(1, 24), Fraction(1, 48)]:
    rec = qmf_residual_32(f, g, alpha, ctx)
    print(f"weight 3/2 at alpha = {alpha}: residual {mp.nstr(rec.residual, 3)}")

h = char_false_theta(1, 3)
rec = qmf_residual_12(h, MoebiusMap(1, 0, 6, 1), mp.mpc("0.1", "-0.5"), ctx)
print("weight 1/2 at tau = 0.1 - 0.5i: residual", mp.nstr(rec.residual, 3))

# r_{g1 g2}(x) = r_{g2}(x) + chi(g2)^-1 (c2 x + d2)^{-3/2} r_{g1}(g2 x)
g1, g2 = MoebiusMap(1, 0, 24, 1), MoebiusMap(1, 0, 48, 1)
x = mp.mpf(1) / 5
gx = x / (48 * x + 1)
lhs = cocycle_r(f, "3/2", g1 @ g2, x, ctx)
rhs = cocycle_r(f, "3/2", g2, x, ctx) + (48 * x + 1) ** (-mp.mpf(3) / 2) / multiplier_chi(12, 1, g2, mp) * cocycle_r(f, "3/2", g1, gx, ctx)
print("cocycle defect:", mp.nstr(abs(lhs - rhs), 3))
