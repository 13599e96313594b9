"""Power words without a rank bound.

For G = F x| K with F the additive group of GF(3^m) and K a subgroup of the
multiplicative group of order prime to 3, every element outside F is a cube
and G^3 = G.  Nilpotent subgroups generated by cubes are all cyclic, yet G
contains the elementary abelian group F of rank m.  So the rank of G^3
cannot be bounded by the ranks of its cube-generated nilpotent subgroups.

Run with ``python demos/03_frobenius_rank.py``.
"""

from verbalrank.checks import frobenius_counterexample

print(f"{'m':>2} {'|G|':>5} {'|F|':>4} {'|K|':>4}  G^3=G  nilpotent cube-generated  all cyclic  d(F)")
for m in (1, 2, 3):
    _, rep = frobenius_counterexample(3, m, 3)
    q = rep.quantities
    print(f"{m:>2} {q['order_G']:>5} {q['order_F']:>4} {q['order_K']:>4}  {str(q['G_n_equals_G']):5}"
          f"  {q['nilpotent_value_generated']:>24}  {str(q['all_cyclic']):10}  {q['d_F']}")
