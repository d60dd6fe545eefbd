"""
L-values at negative integers and radial limits
===============================================

Near a rational alpha the partial theta series has an asymptotic expansion
whose coefficients are values L(-n, C_alpha) of a periodic L-function.  The
values are exact elements of a cyclotomic field, computed from Bernoulli
polynomials.
"""

from fractions import Fraction

from qmflab.lvalues import build_C, l_at_negative_int, radial_value_exact, theta_expansion
from qmflab.modgroup import RationalCusp
from qmflab.numerics import PrecisionContext, fit_power_series
from qmflab.periodic import char_chi12, char_false_theta
from qmflab.qmf import radial_samples

ctx = PrecisionContext(digits=40)
mp = ctx.mp

# L(-1, chi12) = -2, and the even character kills the even-index values
C = build_C(char_chi12(), 0)
print("L(-n, chi12), n = 0..5:", [str(l_at_negative_int(C, n).format()) for n in range(6)])

# at alpha = 1/5 the twisted function has period 60 and complex values
print("Theta_chi12(1/5) =", radial_value_exact(char_chi12(), Fraction(3, 2), Fraction(1, 5)).format())

# the radial expansion of a false theta function, predicted and fitted
f = char_false_theta(1, 3)
alpha = RationalCusp(1, 2)
pred = theta_expansion(f, alpha, 2, ctx)
fit = fit_power_series(radial_samples(f, alpha, "theta", ctx, K=16), 2, ctx)
for r in range(3):
    print(f"t^{r}: predicted {mp.nstr(pred.coeffs[r], 15)}  fitted {mp.nstr(fit.coeffs[r], 15)}")
