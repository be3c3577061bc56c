"""
Lagrange inversion for tree series
==================================

Solve g = x . f(g) for a series f indexed by reduced trees, three ways, and
compare with the one-variable answer after forgetting the tree shapes.
"""

from fractions import Fraction

from planar_lagrange import series
from planar_lagrange.series import TreeSeries
from planar_lagrange.trees import is_right_sided, render_tree

N = 5

f = TreeSeries(N, {"1": 1, "x": Fraction(1, 2), "(x x)": -1, "(x (x x))": 3})
g = series.solve_inversion_recurrence(f)
assert g == series.solve_inversion_gamma(f) == series.solve_inversion_iterate(f)
print("g = x f(g):")
for t, c in g.items():
    if t.degree <= 4:
        print(f"  {str(c):>6}  {render_tree(t)}")

# the fixed-point identity holds exactly, and g lives on right-sided trees
assert g == series.mul(series.x_series(N), series.substitute(f, g))
assert all(is_right_sided(t) for t in g.support())

# forgetting shapes gives the classical G = t F(G)
G = series.abelianize(g)
print("coefficient sums :", [str(c) for c in G])
print("classical answer :", [str(c) for c in series.classical_lagrange(series.abelianize(f), N)])

# with f = 1 + x + (x x) + ... the sums are 1, 1, 2, 7
ones = TreeSeries(N, {t: 1 for t in series.all_trees(N)})
print("all-ones sums    :", [str(c) for c in series.abelianize(series.solve_inversion_gamma(ones))])

# the grafting product is not associative, so the inverse of x . (1/f) under
# substitution is a different series from the fixed point above
h = series.mul(series.x_series(N), series.reciprocal(f))
inv = series.compositional_inverse(h)
print()
print("x . (1/f) composed with its inverse is x:", series.substitute(h, inv) == series.x_series(N))
print("... and with the fixed point:", series.compositional_check(f, g))
print("same coefficient sums:", series.abelianize(inv) == G)
