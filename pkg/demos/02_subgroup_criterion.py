"""Deciding whether X^r A(X^(q-1)) permutes GF(q^2) by looking at mu_{q+1} only."""

# %%
from permpoly import (
    Polynomial, enumerate_mu, field_form, is_permutation_bruteforce, lemma1_check,
    quadratic_field,
)

# %%
F = quadratic_field(2, 2)          # GF(16), q = 4
mu = enumerate_mu(F)
print(len(mu), mu.codes)           # the five solutions of x^5 = 1

# %%
# A = X^7 + X^6 + X^5 + X^3 + 1 with r = 2.  The criterion touches 5 points,
# the brute-force oracle touches all 16.
A = Polynomial.from_exponents(F, [7, 6, 5, 3, 0])
f = field_form(2, A)
print("f =", f)
print(lemma1_check(2, A, mu), is_permutation_bruteforce(f))

# %%
# Sweep every r in one period and compare the two verdicts.
for r in range(1, 16):
    fast, slow = lemma1_check(r, A, mu), is_permutation_bruteforce(field_form(r, A))
    assert fast == slow
    if fast:
        print("permutation for r =", r)
