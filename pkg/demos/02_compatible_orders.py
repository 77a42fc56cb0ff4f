"""
Term orders that respect the shift
===================================

An order on monomials is Inc-compatible when f < g implies p.f < p.g for
every increasing map p.  Over a single row only six term orders qualify;
this script checks them exhaustively on a truncation and contrasts them
with an order that fails.
"""

from itertools import combinations

from equichain.inc import Permutation
from equichain.orders import (
    SIX_TERM_ORDERS,
    PermutedLex,
    check_inc_compatibility,
    check_preorder_axioms,
    distinguishing_pair,
    identify_order_on_r4,
    matrix_row_conditions_r4,
    parse_order,
)
from equichain.ring import Truncation

trunc = Truncation(1, 5)

# The six orders, each checked on all monomials of R_5 up to degree 3.
for o in SIX_TERM_ORDERS:
    ax = check_preorder_axioms(o, trunc, 3)
    cp = check_inc_compatibility(o, trunc, 3)
    print(f"{o.label:16s} total={ax.total} axioms={ax.ok} compatible={cp.ok}")

# They are genuinely different: each pair disagrees somewhere in degree <= 3.
for a, b in combinations(SIX_TERM_ORDERS, 2):
    f, g = distinguishing_pair(a, b, Truncation(1, 4), 3)
    print(f"{a.label} vs {b.label}: {f} , {g}")

# Lex with x2 ahead of x1 is a fine term order but not compatible: the
# checker returns a witness triple.
bad = PermutedLex(Permutation((2, 1)))
print("permuted lex:", check_inc_compatibility(bad, Truncation(1, 4), 2).violation)

# A weight matrix is recognised behaviourally on R_4.
m = parse_order("matrix:[[1,1,1,1],[3,-1,-1,-1],[0,2,-1,-1],[0,0,1,-1]]")
print("matrix order on R_4 behaves like", identify_order_on_r4(m, 4))
print("row conditions:", matrix_row_conditions_r4(m).as_dict())

# Irrational weights give compatible orders on small truncations only.
a2 = parse_order("matrix-sqrt:2:[[1,s]]")
print("[[1, sqrt 2]] on R_2: compatible", check_inc_compatibility(a2, Truncation(1, 2), 6).ok)
