"""Dimensions of free Jordan algebras and a look at small fixtures."""
from jordan_tkk import dimension_table, symmetric_matrices, truncated_algebra, validate

for D in (1, 2, 3):
    rows = dimension_table(D, 5)
    print(f"D={D}:", [r["dim"] for r in rows])

J = truncated_algebra(2, 4)
print("J(2)/J+^4 has basis", ", ".join(J.names))
print("Sym3 satisfies the Jordan axioms:", validate(symmetric_matrices(3)).ok)
