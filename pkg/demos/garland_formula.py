"""Garland's formula in U(sl2[t]) for a = t + t^2."""
from jordan_tkk import verify_garland

rep = verify_garland(3, [0, 1, 1])
for row in rep.rows:
    print(row)
print("all pass:", rep.ok)
