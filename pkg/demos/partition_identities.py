"""Signed class sums of power sums and the exponential series."""
from jordan_tkk.partitions import exp_series_coefficients, signed_class_sizes, verify_girard_newton

print("n=4 signed class sizes:", [(s.parts, c) for s, c in signed_class_sizes(4)])
print("identity holds for n <= 7:", all(verify_girard_newton(n) for n in range(1, 8)))
for k, a in enumerate(exp_series_coefficients(4)):
    print(f"a_{k} =", a)
