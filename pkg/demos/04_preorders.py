"""
Initial spaces for orders that are not total
============================================

For a monomial preorder the initial part of a polynomial is its whole
leading form, so initial ideals are computed degree by degree with exact
linear algebra.  The ideal below, generated by the images of
x1^2*x2 + x1*x2^2, has pairwise different initial ideals under
Max(2), Max(3), ... and under the reversed lex orders.
"""

from equichain.chains import spread
from equichain.inc import Permutation
from equichain.linalg_oracle import graded_piece, initial_space, leading_form_span_bruteforce, monomial_in_initial, spans_equal
from equichain.orders import NamedOrder, PermutedLex
from equichain.ring import Monomial, Truncation, parse_polynomial, to_gf

seed = parse_polynomial("x1^2*x2 + x1*x2^2")
T = Truncation(1, 5)
J = spread([seed], 2, 5)
print("generators:", len(J))

# x1*x_n^2 is in the Max(n) initial ideal but not in the Max(n') one, n < n'.
for n in range(2, 5):
    m = Monomial({(1, 1): 1, (1, n): 2})
    row = [monomial_in_initial(NamedOrder("max", k), J, T, m) for k in range(2, 6)]
    print(f"{m}: Max(2..5) ->", row)

# Lex with the first n variables reversed behaves the same way for x1^2*x_n'.
for n, n2 in ((1, 2), (2, 3), (3, 4)):
    m = Monomial({(1, 1): 2, (1, n2): 1})
    a = monomial_in_initial(PermutedLex(Permutation.reversal(n)), J, T, m)
    b = monomial_in_initial(PermutedLex(Permutation.reversal(n2)), J, T, m)
    print(f"{m}: sigma_{n} {a}, sigma_{n2} {b}")

# The leading forms under Max(3) in degree 3 of R_3.
piece = graded_piece(spread([seed], 2, 3), Truncation(1, 3), 3)
for f in initial_space(NamedOrder("max", 3), piece):
    print("  ", f)

# Over GF(2) the whole space can be enumerated, which double-checks the
# echelon-then-leading-form shortcut.
gf = graded_piece([to_gf(g, 2) for g in J], T, 3)
order = NamedOrder("max", 3)
print("GF(2) dim", gf.dim, "agrees:", spans_equal(initial_space(order, gf), leading_form_span_bruteforce(order, gf.basis, gf.columns), gf.columns))
