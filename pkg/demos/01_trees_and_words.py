"""
Planar trees and Łukasiewicz words
==================================

Trees are written as nested lists of leaves: ``x`` is a single vertex and
``(x (x x))`` grafts ``x`` and ``(x x)`` under a new root.
"""

from planar_lagrange import luk, trees
from planar_lagrange.trees import parse_tree, render_tree

# grafting is the product of the tree algebra; the empty tree "1" is its unit
cherry = trees.tree_product(trees.X, trees.X)
comb = trees.tree_product(trees.X, cherry)
print("x . x       =", render_tree(cherry))
print("x . (x . x) =", render_tree(comb))
print("(x . x) . x =", render_tree(trees.tree_product(cherry, trees.X)))

# reduced trees (no unary vertices) counted by number of leaves
for d in range(1, 7):
    print(f"reduced trees with {d} leaves: {len(trees.enumerate_prt(d))}")

# right-sided trees: x, or x grafted with anything on the right
print("right-sided, 4 leaves:", [render_tree(t) for t in trees.enumerate_right_sided(4)])

# the preorder arity word of a tree is a Łukasiewicz word
t = parse_tree("(x ((x x)) (x))")
w = luk.encode_pt(t)
print()
print("tree  :", render_tree(t))
print("word  :", luk.render_word(w))
print("delta :", luk.delta(w), " luk:", luk.is_luk(w))
print("height:", luk.height(w), "= deepest leaf", trees.max_leaf_depth(t))
print("back  :", render_tree(luk.decode_pt(w)))

# dropping one letter breaks the word: weight 0 instead of -1
broken = luk.parse_nat_word("3 0 1 2 0 1 0")
print("3 0 1 2 0 1 0 is a Łukasiewicz word?", luk.is_luk(broken))

# a concatenation of Łukasiewicz words factors in exactly one way
forest = luk.parse_nat_word("2 0 0 0 1 0")
print("factors of 2 0 0 0 1 0:", [luk.render_word(p) for p in luk.factor(forest)])
