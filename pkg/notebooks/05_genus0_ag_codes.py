# %% [markdown]
# # Codes from the projective line
#
# Message functions come from a Riemann-Roch space L(G). Each place
# contributes one column: the Laurent coefficients of f starting at -G(P).
# The constrained code keeps functions whose lowest coefficients agree
# across all places.

# %%
from posetcode import AGCodeSpec, MdsInequalityParams, build_ag_code, cf_matrix, field_new, mds_inequality
from posetcode import min_distance, rr_basis
from posetcode.agcodes import parse_divisor, parse_places

F = field_new(5)
places = parse_places(F, "1,3,4")
G = parse_divisor("P1:0,P2:0,P3:0,Pinf:3", places)
print("deg G =", G.degree, " dim L(G) =", len(rr_basis(F, G)))

spec = AGCodeSpec(F, places, G, 2)
code = build_ag_code(spec)
print("dim", code.dim, "distance", min_distance(code))
print(cf_matrix(code.basis[-1], spec))

# %% [markdown]
# With a place at infinity and poles at finite places.

# %%
F7 = field_new(7)
pl = parse_places(F7, "1,2,inf")
G = parse_divisor("P1:2,P2:-1,Pinf:1,P@5:1", pl)
code = build_ag_code(AGCodeSpec(F7, pl, G, 3))
print("n =", code.length, "k =", code.dim, "d =", min_distance(code))

# %% [markdown]
# The existence inequality for higher genus is pure arithmetic.

# %%
rep = mds_inequality(MdsInequalityParams(g=2, r=2, s=3, k=1, h=1000, A_k=5))
print(rep.as_dict())
