"""Build sl2^(J), check Jacobi, and look at the central term {J, J}."""
from jordan_tkk import build, central_term, truncated_algebra, truncated_polynomial

for name, J in [("K[t]/t^4", truncated_polynomial(4)), ("J(2)/J+^4", truncated_algebra(2, 4))]:
    G = build(J)
    print(f"{name}: dim sl2^(J) = {G.dim}, dim {{J,J}} = {central_term(J).dim}, "
          f"Jacobi holds: {G.jacobi_violation() is None}")

J = truncated_algebra(2, 4)
G = build(J)
x1, x2 = J.names.index("x1"), J.names.index("x2")
print("{x1, x2} =", G.symbol({x1: 1}, {x2: 1}))
print("{1, x1} =", G.symbol({J.unit: 1}, {x1: 1}))
