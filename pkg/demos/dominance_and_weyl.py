"""Dominant J-spaces embed in their Weyl modules; others do not."""
from fractions import Fraction

from jordan_tkk import is_dominant, make_jspace, truncated_polynomial, weyl_delta_n
from jordan_tkk.weyl import smoothness_witness, standard_module, top_kernel

J = truncated_polynomial(3)
one = Fraction(1)
for label, rho in [("level 2, t acts nilpotently", [[[2, 0], [0, 2]], [[0, 1], [0, 0]], [[0, 1], [0, 0]]]),
                   ("level 1, t acts by 1", [[[one]], [[one]], [[0]]])]:
    V = make_jspace(J, rho)
    print(f"{label}: dominant={is_dominant(V).dominant}, "
          f"kernel of V -> Delta(V) has dim {top_kernel(V).dim}")

for n, N in [(1, 3), (2, 4), (3, 5)]:
    W = weyl_delta_n(truncated_polynomial(N), n)
    s = smoothness_witness(W)
    print(f"Delta({n}) over K[t]/t^{N}: weights {W.dims}, killed by sl2^(J+^{s.N})")
    print("   standard module socle:", standard_module(W).e_invariants())
