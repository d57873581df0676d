import random
from math import gcd

import pytest

from permpoly.construct import (
    Lemma4Params, cor3_product, cor3_quotient, cor5, lemma2_check, lemma2_condition,
    lemma4_seed, make_seed, ord2, smallest_valid_r,
)
from permpoly.errors import InvalidArgument, NotDivisible, PreconditionFailed
from permpoly.gf import make_field, quadratic_field
from permpoly.mu import enumerate_mu, is_permutation_bruteforce
from permpoly.poly import (
    MultiplierSpec, Polynomial, exact_divide, multiplier_product, poly_mul,
    reduce_mod_field,
)

from oracles import naive_is_permutation, naive_permutes_mu


def P(F, *exponents):
    return Polynomial.from_exponents(F, exponents)


@pytest.mark.parametrize("n, expected", [(12, 2), (1, 0), (8, 3), (7, 0), (96, 5)])
def test_ord2(n, expected):
    assert ord2(n) == expected


def test_ord2_rejects_nonpositive():
    with pytest.raises(InvalidArgument):
        ord2(0)


@pytest.mark.parametrize("s, t, q, expected", [
    (2, 1, 4, True), (2, 1, 2, False), (1, 3, 5, False),
])
def test_lemma2_condition(s, t, q, expected):
    assert lemma2_condition(s, t, q) is expected


def test_lemma2_condition_even_k_s2():
    for k in range(2, 17, 2):
        for t in range(1, 200):
            assert lemma2_condition(2, t, 2**k)


def test_lemma2_check_examples(F4, F16):
    A = P(F16, 5, 1, 0)
    out = lemma2_check(7, A, [MultiplierSpec(2, 1)])
    assert out.left and out.right and out.agree
    B = poly_mul(A, P(F16, 2, 1, 0))
    assert naive_permutes_mu(7, B, F16) and naive_permutes_mu(5, A, F16)

    out = lemma2_check(3, Polynomial.constant(F4), [MultiplierSpec(2, 1)])
    assert not out.right and not out.left
    assert not naive_permutes_mu(3, P(F4, 2, 1, 0), F4)

    for r in range(1, 12):
        A = P(F16, 3, 0)
        out = lemma2_check(r, A, [])
        assert out.agree and out.left == naive_permutes_mu(r, A, F16)


@pytest.mark.parametrize("p, k", [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2)])
def test_lemma2_both_directions_random(p, k):
    F = make_field(p, 2 * k)
    mu = enumerate_mu(F)
    q = F.q
    rnd = random.Random(p * 31 + k)
    lefts = set()
    for _ in range(200):
        A = Polynomial(F, {e: rnd.randrange(F.size) for e in range(rnd.randrange(1, 5))})
        specs = [MultiplierSpec(rnd.randrange(1, 5), rnd.randrange(1, q + 2))
                 for _ in range(rnd.randrange(0, 3))]
        out = lemma2_check(rnd.randrange(0, 2 * (q + 1) + 1), A, specs, mu)
        assert out.agree
        lefts.add(out.left)
    assert lefts == {True, False}


def test_lemma4_params_conditions():
    Lemma4Params(1, 1, 1)
    Lemma4Params(1, 2, 2)
    with pytest.raises(PreconditionFailed):
        Lemma4Params(1, 2, 1)
    with pytest.raises(PreconditionFailed):
        Lemma4Params(2, 2, 2)
    with pytest.raises(InvalidArgument):
        Lemma4Params(2, 2, 3)


def test_lemma4_seed_examples():
    seed = lemma4_seed(Lemma4Params(1, 1, 1))
    F = seed.field
    assert seed.v == 3 and seed.D == P(F, 3, 1, 0)
    # x^3 = 1 on mu_3 gives D(x) = x, so x^3 D(x)^(q-1) = x
    mu = enumerate_mu(F)
    ev = seed.D.evaluator()
    assert all(F.mul(F.pow(x, 3), ev(x)) == x for x in mu.codes)

    seed = lemma4_seed(Lemma4Params(1, 2, 2))
    assert seed.v == 5 and seed.D == P(F, 4, 1, 0)
    ev = seed.D.evaluator()
    assert all(ev(x) == 1 and F.pow(x, 5) == F.mul(x, x) for x in mu.codes)
    assert seed.provenance == "lemma4-variant-2"


def test_make_seed_rejects_non_permutation(F16):
    with pytest.raises(PreconditionFailed):
        make_seed(5, Polynomial.constant(F16))   # x^5 = 1 on mu_5
    seed = make_seed(1, Polynomial.constant(F16))
    assert seed.provenance == "user-supplied"


def test_smallest_valid_r():
    assert smallest_valid_r(2, 4) == 2
    assert smallest_valid_r(3, 4) == 8       # 3 shares 3 with q-1
    assert smallest_valid_r(0, 4) == 5
    assert smallest_valid_r(1, 2) == 1
    with pytest.raises(PreconditionFailed):
        smallest_valid_r(2, 5)              # every r = 2 mod 6 is even, q-1 = 4
    for q in (3, 4, 5, 7, 8, 9, 16, 25):
        for res in range(q + 1):
            try:
                r = smallest_valid_r(res, q)
            except PreconditionFailed:
                assert not any(gcd(c, q - 1) == 1
                               for c in range(res or q + 1, 4 * q * q, q + 1))
                continue
            assert r % (q + 1) == res and gcd(r, q - 1) == 1
            assert all(gcd(c, q - 1) != 1 for c in range(res or q + 1, r, q + 1))


def test_cor3_product_examples():
    seed = lemma4_seed(Lemma4Params(2, 2, 1))
    F = seed.field
    same = cor3_product(seed, [], seed.v)
    assert same.B == seed.D and same.verified
    res = cor3_product(seed, [MultiplierSpec(2, 1)], 2)
    assert res.B == P(F, 7, 6, 5, 3, 0)
    assert res.verified and naive_is_permutation(res.f)
    with pytest.raises(PreconditionFailed, match="congruence"):
        cor3_product(seed, [MultiplierSpec(2, 1)], 5)
    with pytest.raises(PreconditionFailed, match="gcd"):
        cor3_product(seed, [MultiplierSpec(2, 1)], 12)


def test_cor3_product_multiplier_condition():
    seed = lemma4_seed(Lemma4Params(1, 1, 1))
    with pytest.raises(PreconditionFailed, match="multiplier"):
        cor3_product(seed, [MultiplierSpec(2, 1)], 2)


def test_cor3_quotient_examples():
    seed = lemma4_seed(Lemma4Params(2, 2, 1))
    F = seed.field
    res = cor3_quotient(seed, [MultiplierSpec(2, 1)], 8)
    assert res.B == P(F, 3, 2, 0)
    assert poly_mul(res.B, P(F, 2, 1, 0)) == seed.D
    assert naive_is_permutation(res.f)
    seed2 = lemma4_seed(Lemma4Params(2, 4, 2))   # D = X^16 + X + 1, ell even
    with pytest.raises(NotDivisible):
        cor3_quotient(seed2, [MultiplierSpec(2, 1)], 5)
    same = cor3_quotient(seed, [], seed.v)
    assert same.B == seed.D


def test_cor5_examples():
    res = cor5(2, 2, 1, 1, t=1)
    F = res.f.owner
    assert res.r == 2 and res.B == P(F, 7, 6, 5, 3, 0) and res.verified
    assert res.branch == "cor5.1"
    res = cor5(2, 2, 1, 2)
    assert res.r == 8 and res.B == P(F, 3, 2, 0) and res.verified
    assert naive_is_permutation(res.f)
    res = cor5(2, 1, 2, 2)
    assert res.B == Polynomial.constant(F) and res.r == 1 and res.f == P(F, 1)
    for r in (1, 11, 16):
        f = cor5(2, 1, 2, 2, r=r).f
        assert f == reduce_mod_field(P(F, r)) and gcd(r, 15) == 1


def test_cor5_preconditions():
    with pytest.raises(PreconditionFailed, match="even"):
        cor5(3, 1, 1, 1, t=1)
    with pytest.raises(PreconditionFailed, match="branch 2"):
        cor5(2, 2, 2, 2)
    with pytest.raises(PreconditionFailed, match="positive t"):
        cor5(2, 2, 1, 1)
    with pytest.raises(PreconditionFailed, match="congruence"):
        cor5(2, 2, 1, 1, t=1, r=4)


def test_cor3_quotient_reconstructs_seed():
    for k in (1, 2, 3, 4):
        for ell in range(1, 7):
            for variant in (1, 2):
                try:
                    seed = lemma4_seed(Lemma4Params(k, ell, variant), verify=False)
                except PreconditionFailed:
                    continue
                specs = [MultiplierSpec(2, 1)]
                prod = multiplier_product(specs, seed.field)
                try:
                    B = exact_divide(seed.D, prod)
                except NotDivisible:
                    continue
                assert poly_mul(B, prod) == seed.D


def test_constructions_pass_oracle_up_to_q64():
    """Every construction in a small grid is a permutation, q up to 64."""
    count = 0
    for k in (1, 2, 3, 4, 5, 6):
        q = 2**k
        for ell in range(1, 5):
            for variant in (1, 2):
                try:
                    seed = lemma4_seed(Lemma4Params(k, ell, variant))
                except PreconditionFailed:
                    continue
                for specs in ([], [MultiplierSpec(2, 1)], [MultiplierSpec(2, 3)],
                              [MultiplierSpec(4, 1)], [MultiplierSpec(2, 1), MultiplierSpec(2, 2)]):
                    for factory, sign in ((cor3_product, 1), (cor3_quotient, -1)):
                        target = seed.v + sign * sum(s.s * s.t for s in specs)
                        try:
                            r = smallest_valid_r(target, q)
                            res = factory(seed, specs, r, verify=False)
                        except (PreconditionFailed, NotDivisible):
                            continue
                        assert is_permutation_bruteforce(res.f)
                        count += 1
    assert count > 50


def test_divisibility_parity():
    for k in (1, 2):
        F = quadratic_field(2, k)
        for ell in range(1, 11):
            for variant in (1, 2):
                D = P(F, 2**ell + 1 if variant == 1 else 2**ell, 1, 0)
                expected = (ell % 2 == 0 and variant == 1) or (ell % 2 == 1 and variant == 2)
                try:
                    exact_divide(D, P(F, 2, 1, 0))
                    ok = True
                except NotDivisible:
                    ok = False
                assert ok is expected, (ell, variant)
