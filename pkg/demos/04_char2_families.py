"""Explicit families over GF(2^(2k)) with k even."""

# %%
from permpoly import cor5, is_permutation_bruteforce, term_count
from permpoly.errors import PreconditionFailed

# %%
for k in (2, 4):
    for ell in (1, 2, 3):
        for variant in (1, 2):
            for branch, t in ((1, 1), (2, None)):
                try:
                    res = cor5(k, ell, variant, branch, t=t)
                except PreconditionFailed as exc:
                    print(f"k={k} ell={ell} variant={variant} branch={branch}: {exc}")
                    continue
                print(f"k={k} ell={ell} variant={variant} branch={branch}: r={res.r}, "
                      f"{term_count(res.f)} terms, permutation={res.verified}")

# %%
# The smallest instance: 3 terms over GF(16).
res = cor5(2, 2, 1, 1, t=1)
print(res.f, is_permutation_bruteforce(res.f))
