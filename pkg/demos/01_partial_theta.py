"""
Partial theta series and their transformation law
=================================================

The series theta_f(z) = sum f(n) q^{n^2/2M} for the character chi12 is the
Dedekind eta function in disguise.  We evaluate it three ways, check its
weight 1/2 transformation under an element of Gamma_12, and watch it decay
towards the rational point 0.
"""

from fractions import Fraction

from qmflab.modgroup import MoebiusMap
from qmflab.numerics import PrecisionContext
from qmflab.periodic import char_chi12
from qmflab.theta import decay_at_rational, product_form, theta_f, transform_residual_theta

ctx = PrecisionContext(digits=40)
mp = ctx.mp
f = char_chi12()

# the same value from the q-series, the modular reduction and the triple product
z = mp.mpc("0.1", "0.3")
print("series  ", mp.nstr(theta_f(f, z, ctx, method="series"), 30))
print("modular ", mp.nstr(theta_f(f, z, ctx, method="modular"), 30))
print("product ", mp.nstr(product_form(f, z, ctx), 30))

# theta_f(g z) = chi(g) (cz + d)^{1/2} theta_f(z) for g in Gamma_12
g = MoebiusMap(1, 0, 24, 1)
res = transform_residual_theta(f, g, mp.mpc(0, "0.5"), ctx)
print("transformation residual for", g, ":", mp.nstr(abs(res), 3))

# near 0 the series dies like exp(-pi/(12 y)) / sqrt(12 y) times 2 sqrt 3
for k in range(5):
    y = Fraction(1, 20) / 2**k
    r = decay_at_rational(f, 0, y, ctx)
    print(f"y = {str(y):>6}  normalized = {mp.nstr(r.normalized.real, 20)}")
print("2 sqrt 3          =", mp.nstr(2 * mp.sqrt(3), 20))
