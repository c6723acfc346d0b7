"""Special-function toolkit: Bessel evaluation, Chebyshev recurrences,
and the Stirling factorial bound.

Run:  python3 demos/01_special_functions.py
"""

import math

import numpy as np

from wavedof import (
    bessel_j,
    bessel_j_table,
    chebyshev_first_kind,
    chebyshev_second_kind,
    stirling_gamma_lower,
)

print("cylinder-function values J_n(z)")
print(f"{'z':>6} " + " ".join(f"{f'J_{n}':>12}" for n in range(5)))
for z in (0.0, 1.0, 2.4048255576957728, 5.0, 20.0):
    row = bessel_j_table(4, z)
    print(f"{z:6.3f} " + " ".join(f"{v:12.6f}" for v in row))
print("(the second row sits at the first zero of J_0)\n")

print("three-term recurrence residual J_{n-1} + J_{n+1} - (2n/z) J_n")
rng = np.random.default_rng(7)
worst = 0.0
for _ in range(200):
    n = int(rng.integers(1, 40))
    z = float(rng.uniform(0.1, 80.0))
    row = bessel_j_table(n + 1, z)
    lhs = row[n - 1] + row[n + 1]
    rhs = 2.0 * n / z * row[n]
    worst = max(worst, abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300))
print(f"worst relative residual over 200 draws: {worst:.3e}\n")

print("Chebyshev polynomials against the cosine identity T_n(cos t) = cos(n t)")
worst = 0.0
for _ in range(200):
    n = int(rng.integers(0, 30))
    t = float(rng.uniform(0.0, math.pi))
    worst = max(worst, abs(chebyshev_first_kind(n, math.cos(t)) - math.cos(n * t)))
print(f"worst absolute error over 200 draws: {worst:.3e}")
print(f"endpoint law of the second kind: U_9(1) = {chebyshev_second_kind(9, 1.0):.1f} (expect 10)\n")

print("Stirling lower bound against the factorial")
for n in (1, 5, 20, 100):
    bound = stirling_gamma_lower(n)
    exact = math.lgamma(n + 1)
    print(
        f"n={n:>3}: log bound {bound.log_value:14.6f} < log n! {exact:14.6f}"
        f"  (gap {exact - bound.log_value:.4f})"
    )
print(f"\nscalar check J_5(1) = {bessel_j(5, 1.0):.12e}")
