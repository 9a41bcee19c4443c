# %% [markdown]
# # A small bottleneck Reed-Solomon code
#
# Over GF(5) with points 1, 3, 4, two rows and t = 4, the message space is the
# polynomials of degree < 4 whose first hyperderivative takes the same value at
# every point. That value fills the collapsed row once.

# %%
from posetcode import RSCodeSpec, build_code, compare_metrics, field_new, min_distance, weight_enumerator
from posetcode.poly import pretty
from posetcode.worked import compute_rows, run

F = field_new(5)
code = build_code(RSCodeSpec(F, (1, 3, 4), s=2, t=4, b_row=1))
print("basis:", [pretty(f) for f in code.basis])
print("length", code.length, "dim", code.dim, "distance", min_distance(code))

# %%
we = weight_enumerator(code)
print(we.polynomial())

for row in compute_rows(code)[:6]:
    print(row)

# %% [markdown]
# The full table is checked against the shipped golden file.

# %%
report = run()
print(len(report["rows"]), "rows match;", report["length"], report["dim"], report["distance"])

# %% [markdown]
# Same evaluation data under the NRT metric gives a longer code of higher
# dimension and the same distance.

# %%
for row in compare_metrics(F, (1, 3, 4), 2, 4).rows():
    print(row)
