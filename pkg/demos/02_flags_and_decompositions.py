"""
Flags, their words, and decompositions
======================================

A flag on a right-sided tree is a strictly increasing chain of open subtrees
ending at the whole tree.  Each flag has a word whose letters are reduced
trees; each flag also corresponds to a decomposition of the tree into pieces.
"""

from planar_lagrange import flags, luk
from planar_lagrange.trees import enumerate_right_sided, parse_tree, render_tree

host = parse_tree("(x (x (x x)))")
print("host:", render_tree(host))

fl = flags.enumerate_flags(host)
for i, f in enumerate(fl, 1):
    stages = " < ".join(str(sorted(s.to_strings())) for s in f.stages)
    word = flags.encode_flag(f)
    print(f"flag {i}: {stages}")
    print(f"        word {luk.render_word(word)}")
    d = flags.flag_to_decomposition(f)
    print("        pieces", [render_tree(p.shape) + "@" + (".".join(map(str, p.root_pos)) or "root") for p in d.ordered_pieces])

# the word determines the flag
w = luk.parse_tree_word("x; x; 1")
f = flags.decode_flag(w)
print()
print("decoded 'x; x; 1' lives on", render_tree(f.host), "with", f.length, "stages")

# same number of flags and decompositions on every right-sided tree
print()
for d in range(2, 6):
    counts = [(len(flags.enumerate_flags(t)), len(flags.enumerate_decompositions(t))) for t in enumerate_right_sided(d)]
    assert all(a == b for a, b in counts)
    print(f"degree {d}: flags per tree {[a for a, _ in counts]}")
