# %% [markdown]
# # Finite fields and hyperderivatives
#
# Elements of GF(p^m) are stored as integer codes: the base-p digits of the
# code are the coefficients of a polynomial modulo the field's modulus.

# %%
from posetcode import Polynomial, field_new, hyperderivative, parse_field, vanishing_order
from posetcode.gf import binom_mod_p
from posetcode.poly import pretty

F8 = parse_field("2^3")
print(F8.modulus)  # x^3 + x + 1, lowest coefficient first
a = F8.from_coeffs([0, 1])  # the class of x
print([F8.pow(a, k) for k in range(8)])

# %% [markdown]
# Every nonzero element has an inverse.

# %%
print(all(F8.mul(b, F8.inv(b)) == 1 for b in range(1, 8)))

# %% [markdown]
# ## Hyperderivatives
#
# The j-th hyperderivative sends x^i to C(i, j) x^(i-j). The binomial is
# reduced mod p with Lucas, so it can vanish even when i >= j.

# %%
F5 = field_new(5)
f = Polynomial(F5, [0, 1, 3, 4])  # 4x^3 + 3x^2 + x
for j in range(4):
    print(j, pretty(hyperderivative(f, j)))

print(binom_mod_p(5, 1, 5), binom_mod_p(6, 2, 5))

# %% [markdown]
# The vanishing order at a point is the first j with a nonzero j-th
# hyperderivative there.

# %%
g = Polynomial.from_roots(F5, [1, 1, 1, 3])
print(pretty(g), vanishing_order(g, 1), vanishing_order(g, 3), vanishing_order(g, 2))
