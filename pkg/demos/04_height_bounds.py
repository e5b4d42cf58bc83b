"""Closed-form height-bound evaluators and their shared asymptote.

Both bound families converge to omega_sq / (4(g-1)); with zero residual
constant and zero discriminant term the lower family stays below the upper
family on the whole grid.
"""

from fractions import Fraction

from hermlat import (
    CurveInvariants,
    asymptotic_consistency,
    binomial_sum_constant,
    height_floor,
    height_limit,
    height_lower_bounds,
    height_upper_bounds,
)

print("combinatorial constant: D(m, 1, g) = 1, D(10, 2, 2) =", binomial_sum_constant(10, 2, 2))

inv = CurveInvariants(g=2, r=1, log_disc=0.0, omega_sq=1.0, residual_c=0.0)
print(f"genus {inv.g}, omega_sq {inv.omega_sq}: floor {height_floor(inv)}, "
      f"limit {height_limit(inv.omega_sq, 2 * inv.g - 2)}")

print()
print("      d     lower_a     lower_b     upper_a     upper_b")
for d in (1, 5, 20, 1000, 10**8):
    la, lb = height_lower_bounds(inv, d)
    ua, ub = height_upper_bounds(inv, d)
    fmt = lambda v: f"{v:11.6f}" if v is not None else "          -"
    print(f"{d:>9}", fmt(la), fmt(lb), fmt(ua), fmt(ub))

rep = asymptotic_consistency(inv)
print()
print(f"limit {rep.limit}, converged at 1e-6 by d = 10^8: {rep.converged}, "
      f"fitted deviation constant K = {rep.fitted_k:.4f}")

print()
print("exact rational mode (zero discriminant and residual terms):")
exact = CurveInvariants(g=2, omega_sq=Fraction(1))
la, lb = height_lower_bounds(exact, 5)
ua, ub = height_upper_bounds(exact, 5)
print(f"  d=5 lower bounds: {la}, {lb}; upper bounds: {ua}, {ub}")
