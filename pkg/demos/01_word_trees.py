"""A walk through commutator words as binary trees.

Run with ``python demos/01_word_trees.py``.
"""

from verbalrank.words import (
    build_w_v, commutator, delta, gamma, max_delta_level, metrics, parse_word, section_below_level,
    sections, to_dot,
)

# The left-normed commutator [x1,x2,x3,x4] is a chain: each new variable
# hangs off the root side, so the tree is tall and thin.
g4 = parse_word("[x1,x2,x3,x4]")
print("word:", g4)
print("height, vertices, defect:", tuple(metrics(g4)))

# Defect measures how far a tree is from the full binary tree of the same
# height.  The derived words delta_n are exactly the defect-0 words.
for w in (gamma(4), commutator(gamma(3), gamma(3)), delta(3)):
    print(f"  defect {metrics(w).defect:2d}  {w}")

# A section is a maximal antichain of vertices.  Cutting below a level gives
# a canonical one: the vertices one level up plus any leaves even closer to
# the root.
print("\nsections of", g4)
for S in sections(g4):
    print("  ", sorted(g4.label(v) for v in S))
i = max_delta_level(g4)
S = section_below_level(g4, i)
print(f"cut below level {i}:", sorted(g4.label(v) for v in S))

# For each vertex of that cut, plant a copy of delta_i on top of it.  The
# result is a proper extension of the word with the same height.
for v in sorted(S):
    print(f"  w^({g4.label(v)}) = {build_w_v(g4, v, i)}")

print("\nDOT for gamma3 (root drawn at the bottom):")
print(to_dot(gamma(3)))
