"""Arithmetic in GF(p^n): building fields, encoding elements, checking moduli."""

# %%
from permpoly import FieldSpec, fe_inv, fe_pow, is_irreducible, make_field, quadratic_field

# %% [markdown]
# make_field picks the lexicographically smallest monic irreducible modulus.
# Elements are integers whose base-p digits are the coordinates.

# %%
F = make_field(2, 4)
print(F.modulus)          # low to high: X^4 + X + 1
w = F(0b0010)             # the class of X
print(w, w * w, w + 1)
print(fe_inv(w), fe_inv(w) * w)

# %%
# The multiplicative group is cyclic of order 15.
g = F(F.primitive_element)
print(sorted({fe_pow(g, i).value for i in range(15)}) == list(range(1, 16)))

# %%
# Odd characteristic works the same way.
K = quadratic_field(3, 1)
print(K.size, K.q, K.modulus)
x = K([1, 2])             # 1 + 2X
print(x * fe_inv(x))

# %%
# A user supplied modulus must be irreducible.
print(is_irreducible([1, 1, 0, 0, 1], 2), is_irreducible([1, 0, 0, 0, 1], 2))
try:
    FieldSpec(2, 4, (1, 0, 0, 0, 1))
except Exception as exc:
    print(type(exc).__name__, exc)
