# %% [markdown]
# # Parameter sweeps
#
# Each sweep row builds a code, counts its dimension and minimum distance by
# exhaustive enumeration, and compares with the MDS prediction.

# %%
from posetcode import sweep

rep = sweep.run_nrt(qs=(3, 4, 5), s_values=(2, 3))
print(rep.summary())

# %% [markdown]
# The bottleneck sweep over the full stated range of t has failing rows.
# All of them sit below t = r * b_row.

# %%
rep = sweep.run_bottleneck(qs=(5,), s_values=(3,))
print(rep.summary())
fails = [r for r in rep.rows if r.status == "FAIL"]
for r in fails[:5]:
    print(r.line())
print(all(dict(r.params)["t"] < dict(r.params)["r"] * dict(r.params)["b_row"] for r in fails))

# %% [markdown]
# Restricting to t >= r * b_row removes every failure.

# %%
print(sweep.run_bottleneck(qs=(3, 4, 5), s_values=(2, 3), t_rule="strict").summary())

# %% [markdown]
# A concrete non-MDS word: q = 5, points 0 and 1, s = 3, b_row = 3, t = 5.
# f = x^2 (x - 1)^2 vanishes to order 2 at both points.

# %%
import numpy as np

from posetcode import Polynomial, RSCodeSpec, build_code, field_new

F = field_new(5)
code = build_code(RSCodeSpec(F, (0, 1), 3, 5, 3))
f = Polynomial.from_roots(F, [0, 0, 1, 1])
A = code.evaluate(f)
print(np.asarray(A), code.weight(A))
