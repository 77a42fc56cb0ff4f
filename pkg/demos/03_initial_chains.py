"""
A chain whose initial chain stabilises late
===========================================

Take J_4 = <x1 + x3> in R_4 and let J_n for n > 4 be generated by all
Inc-images of x1 + x3.  The chain itself stabilises at level 4, yet its
initial chains under every compatible term order need until level 6.
"""

from equichain import chains as ch
from equichain.orders import DEGMAX2, MIN, SIX_TERM_ORDERS

chain = ch.remark32_chain()
print("J_5 generators:", [str(g) for g in ch.level_generators(chain, 5)])
print("chain:", ch.stability_index_upto(chain, 8))

for order in (MIN, DEGMAX2):
    ins = ch.initial_chain(chain, order, 7)
    print(order.label)
    for n, I in enumerate(ins, 1):
        print(f"  in(J_{n}) = {I}")

# The doubling test: if in(J_{2N}) is generated by the images of in(J_N),
# the initial chain is stable from 2N on.  N = 4 and N = 5 fail, N = 6 works.
for N in (4, 5, 6):
    rep = ch.certify_initial_stability(chain, DEGMAX2, N)
    print(f"N={N}: certified={rep.certified} bound={rep.bound}")

# Across all six orders: stability data and how many distinct initial chains there are.
iset = ch.compute_I_set(chain, SIX_TERM_ORDERS, 12)
for label, r in iset.reports.items():
    print(f"{label:16s} candidate {r.candidate_index}, Ind <= {r.bound}, exact {r.exact}")
print("distinct initial chains:", ch.distinct_initial_chains(chain, SIX_TERM_ORDERS, 12).as_dict())

# In degree one the initial ideal at level n is cut out by intersections with
# 5 columns at a time.
print("decomposition at (5,7):", ch.check_intersection_decomposition(chain, DEGMAX2, 5, 7))
