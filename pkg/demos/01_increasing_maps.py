"""
Increasing maps and how they move polynomials
=============================================

The monoid Inc(N) of strictly increasing maps N -> N acts on the variables
x[i,j] by relabelling the column j.  This walk-through shows the three
combinatorial facts everything else rests on.
"""

from equichain.inc import IncMap, apply, can_replace_in_window, decompose, enumerate_inc, exists_map_through, map_through
from equichain.ring import parse_polynomial

# A map is written by its images; [4->(2,3,4,5)] sends 1,2,3,4 to 2,3,4,5.
p = IncMap((2, 3, 4, 5))
f = parse_polynomial("x1 + x3")
print("p =", p, "  p.f =", apply(p, f))

# Inc(N)_{m,n} is finite: the increasing maps [m] -> [n].
print("|Inc_{4,5}| =", len(enumerate_inc(4, 5)))
print("distinct images of x1+x3:", sorted({str(apply(q, f)) for q in enumerate_inc(4, 5)}))

# Which prescribed values can a map from [N] to [n] take?  Only the gaps
# between consecutive points matter, including the two ends.
print("through 1->2, 4->5 in Inc_{4,5}:", exists_map_through([(1, 2), (4, 5)], 4, 5), map_through([(1, 2), (4, 5)], 4, 5))
print("through 1->3 in Inc_{4,5}:", exists_map_through([(1, 3)], 4, 5))

# Replacing a map by one from a smaller window is possible exactly when the
# slack on the source side does not exceed the slack on the target side.
g = parse_polynomial("x1*x3")
print("x1*x3 via (2,3,5,6) inside Inc_{4,5}:", can_replace_in_window(g, IncMap((2, 3, 5, 6)), 4, 5))
print("x1*x3 via (2,3,4,5) inside Inc_{4,5}:", can_replace_in_window(g, IncMap((2, 3, 4, 5)), 4, 5))

# Every map [l] -> [n] factors through level m.
d = decompose(IncMap((2, 5, 6)), 3, 4, 6)
print("(2,5,6) =", d.p2, "after", d.p1)
