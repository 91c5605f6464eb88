"""Chevalley-Eilenberg homology of sl2^(J+) for truncated free Jordan algebras."""
from jordan_tkk import ce_homology, isotypic_decomposition, positive_part_of, relative_homology
from jordan_tkk import top_cycle_relations, truncated_algebra
from jordan_tkk.homology import by_weight

u = positive_part_of(truncated_algebra(2, 4))
for k in (1, 2):
    H = ce_homology(u, k=k, max_degree=3)
    for d in sorted({d for d, _ in H}):
        print(f"H_{k} degree {d}: {isotypic_decomposition(by_weight(H, d))}")
print("relative H_2:", relative_homology(u, k=2, max_degree=3))
print("relative H_3 with L(2):", relative_homology(positive_part_of(truncated_algebra(2, 3)), "L(2)", k=3,
                                                   max_degree=2))
print(top_cycle_relations(truncated_algebra(2, 5), 2).to_dict())
