"""Multiplying a known permutation by cyclotomic-style factors, with every condition checked."""

# %%
from permpoly import (
    Lemma4Params, MultiplierSpec, cor3_product, cor3_quotient, lemma2_check, lemma4_seed,
    smallest_valid_r,
)
from permpoly.errors import PreconditionFailed

# %%
# Start from a seed D that is known to permute mu_{q+1} with exponent v.
seed = lemma4_seed(Lemma4Params(k=2, ell=2, variant=1))
print("v =", seed.v, " D =", seed.D)

# %%
# Multiplying by X^2 + X + 1 (s = 2, t = 1) shifts the exponent residue.
spec = MultiplierSpec(2, 1)
q = seed.field.q
r = smallest_valid_r((seed.v + 2 * 1) % (q + 1), q)
res = cor3_product(seed, [spec], r)
print("r =", r)
print("B =", res.B)
print("f =", res.f, " verified:", res.verified)

# %%
# The quotient branch divides instead; division must be exact.
quo = cor3_quotient(seed, [spec], smallest_valid_r((seed.v - 2) % (q + 1), q))
print("B =", quo.B, " f =", quo.f)

# %%
# The equivalence behind both branches, evaluated from both sides.
out = lemma2_check(res.r, seed.D, [spec])
print(out.left, out.right, out.agree)

# %%
# Violated conditions are reported, not silently ignored.
try:
    cor3_product(seed, [spec], 5)
except PreconditionFailed as exc:
    print(exc)
