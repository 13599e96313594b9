"""Word values and verbal subgroups in small groups.

Run with ``python demos/02_verbal_subgroups.py``.
"""

from verbalrank.catalog import get_group
from verbalrank.checks import check_focal, check_goodgen, standard_closure
from verbalrank.structure import sylow_subgroup
from verbalrank.subgroups import full
from verbalrank.verbal import p_partition, tuple_verbal, verbal_subgroup, w_values
from verbalrank.words import delta, gamma

S4 = full(get_group("S4"))

# Every element of A4 is a commutator in S4, so the value set of [x1,x2] is
# already a subgroup here.
vs = w_values(S4, gamma(2))
print(f"[x1,x2] takes {len(vs)} values in S4:")
print("  ", ", ".join(vs.dump()))
print("  verbal subgroup order:", verbal_subgroup(S4, gamma(2))[0].order())
print("  [[x1,x2],[x3,x4]] gives order", verbal_subgroup(S4, delta(2))[0].order())

# Split the values by prime: the 2-elements among them, and their closure
# under conjugation.
X, Y = p_partition(vs, 2)
print(f"\n2-elements among the values: {len(X)}, conjugation closure: {len(Y)}")

# The intersection of a Sylow 2-subgroup with w(G) is generated by the values
# that already lie in the Sylow subgroup.
P = sylow_subgroup(S4, 2)
print("Sylow 2-subgroup order:", P.order())
print(check_focal(S4, gamma(2), 2, name="S4").to_text())

# Starting from a commutator-closed generating set, the values with all
# arguments from that set already generate w(G).
X = standard_closure(S4)
print(f"\ncommutator closure of the generators and inverses: {len(X)} elements")
print(check_goodgen(S4, X, gamma(3), name="S4").to_text())

# w(i): arguments drawn from terms of the derived series.
for i in [(0, 0), (1, 0), (1, 1), (2, 1)]:
    print(f"w{i} has order {tuple_verbal(S4, gamma(2), i).order()}")
