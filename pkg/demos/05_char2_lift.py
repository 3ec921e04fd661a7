"""The characteristic-two lift of the wave operator.

Over the field of rational functions in t^(1/2^k) with GF(2) coefficients,
the operator F |-> F + F(sqrt(z p))^2 / F(p) lifts the tropical wave: the
square collapses the square root (Frobenius), so each coefficient transforms
as A -> A + A^2 p1^i p2^j / F(p), and tropicalizing the result equals waving
the tropicalization at val(p).  The identity is verified mechanically here,
including the boundary cases the proof keeps implicit.
"""

from fractions import Fraction as F

from tropwave import (GF2Poly, GF2RatFun, LaurentPoly2, s_wave, trop,
                      verify_lift_theorem)
from tropwave.lift2 import degenerate_cancellation, fuzz_lift, trop_wave

t = GF2RatFun.t
one = GF2RatFun.one()

# the basic example: F = X + Y at p = (t, t^2)
Fxy = LaurentPoly2({(1, 0): one, (0, 1): one})
p = (t(1), t(2))
SF = s_wave(Fxy, p)
print("S_p(X + Y):")
print(SF.to_text())
print("Trop(S_p F):", trop(SF))
print("wave of Trop(F) at val(p):", trop_wave(trop(Fxy), (F(1), F(2))))
ok, _ = verify_lift_theorem(Fxy, p)
print("identity verified:", ok)
print("(S_p F)(p) = 0:", SF.evaluate(p).is_zero())
print("idempotent:", s_wave(SF, p) == SF)

# when F(p) = 0 the operator is the identity (tie on the tropical side)
print("\nF(p) = 0 at p = (t, t):", s_wave(Fxy, (t(1), t(1))) == Fxy)

# the implicit genericity: exact cancellation among the non-minimal
# monomials breaks the identity, and the checker reports it honestly
F5 = LaurentPoly2({(1, 0): one, (0, 1): t(1), (1, 1): one})
print("\ndegenerate instance F = X + tY + XY at p = (t, t^2):")
print("  cancellation detected:", degenerate_cancellation(F5, p))
ok5, witness = verify_lift_theorem(F5, p)
print("  identity holds:", ok5, " witness:", witness)

# random verification
report = fuzz_lift(500, seed=1)
print(f"\nfuzz: {report['trials']} generic instances verified, "
      f"{report['degenerate_skipped']} degenerate draws resampled, "
      f"{len(report['failures'])} failures")
