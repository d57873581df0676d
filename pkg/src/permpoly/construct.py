"""Checked factories for permutation polynomials of the form X^r B(X^(q-1)).

The pipeline: start from a seed (v, D) with X^v D(X)^(q-1) permuting
mu_{q+1}, multiply D by (or divide D by) multiplier polynomials
sum_{j<=s} X^(jt), and shift the exponent r by the matching amount
sum s*t modulo q+1.  The characteristic-2 seeds come from the two families
D = X^(Q+1) + X + 1 and D = X^Q + X + 1 with v = Q + 1.

Every factory checks its hypotheses up front and raises PreconditionFailed
naming the clause that fails.  With ``verify=True`` (the default) the result
is also run through the brute-force oracle whenever the field is small enough.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from . import mu as _mu
from .errors import InternalInconsistency, InvalidArgument, NotDivisible, PreconditionFailed
from .gf import FieldSpec, quadratic_field
from .mu import MuGroup, enumerate_mu, field_form, is_permutation_bruteforce, permutes_mu
from .poly import MultiplierSpec, Polynomial, exact_divide, multiplier_product, poly_mul

USER_SUPPLIED = "user-supplied"


def ord2(n: int) -> int:
    """2-adic valuation of a positive integer."""
    if n <= 0:
        raise InvalidArgument(f"ord2 needs a positive integer, got {n}")
    return (n & -n).bit_length() - 1


def lemma2_condition(s: int, t: int, q: int) -> bool:
    """gcd(s+1, q) = 1 and (q+1)/gcd(t, q+1) is coprime to s+1."""
    return gcd(s + 1, q) == 1 and gcd((q + 1) // gcd(t, q + 1), s + 1) == 1


def _as_specs(specs) -> tuple[MultiplierSpec, ...]:
    return tuple(sp if isinstance(sp, MultiplierSpec) else MultiplierSpec(*sp) for sp in specs)


@dataclass(frozen=True)
class Lemma2Outcome:
    left: bool
    right: bool

    @property
    def agree(self) -> bool:
        return self.left == self.right


def lemma2_check(r: int, A: Polynomial, specs: Sequence[MultiplierSpec],
                 mu: MuGroup | None = None) -> Lemma2Outcome:
    """Evaluate both sides of the multiplier equivalence independently.

    left:  X^r B(X)^(q-1) permutes mu_{q+1}, with B = A * prod of multipliers.
    right: X^(r - sum s*t) A(X)^(q-1) permutes mu_{q+1}, and every (s, t)
           passes ``lemma2_condition``.
    """
    specs = _as_specs(specs)
    F = A.owner
    mu = enumerate_mu(F) if mu is None else mu
    B = poly_mul(A, multiplier_product(specs, F))
    left = permutes_mu(r, B, mu)
    shift = sum(sp.s * sp.t for sp in specs)
    conditions = all(lemma2_condition(sp.s, sp.t, F.q) for sp in specs)
    right = permutes_mu(r - shift, A, mu) and conditions
    return Lemma2Outcome(left, right)


@dataclass(frozen=True)
class SeedPermutation:
    """(v, D) such that X^v D(X)^(q-1) permutes mu_{q+1}."""
    v: int
    D: Polynomial
    provenance: str = USER_SUPPLIED

    @property
    def field(self) -> FieldSpec:
        return self.D.owner


def make_seed(v: int, D: Polynomial, provenance: str = USER_SUPPLIED,
              verify: bool = True) -> SeedPermutation:
    if not D.owner.quadratic:
        raise InvalidArgument(f"{D.owner!r} is not a quadratic extension GF(q^2)")
    if verify and not permutes_mu(v, D, enumerate_mu(D.owner)):
        raise PreconditionFailed(f"X^{v} D(X)^(q-1) does not permute mu_(q+1) for D = {D}")
    return SeedPermutation(v, D, provenance)


@dataclass(frozen=True)
class Lemma4Params:
    k: int
    ell: int
    variant: int

    def __post_init__(self):
        if self.k < 1 or self.ell < 1:
            raise InvalidArgument("k and ell must be positive")
        if self.variant == 1:
            if not ord2(self.ell) <= ord2(self.k):
                raise PreconditionFailed(
                    f"variant 1 needs ord2(ell) <= ord2(k); "
                    f"got ord2({self.ell}) = {ord2(self.ell)}, ord2({self.k}) = {ord2(self.k)}")
        elif self.variant == 2:
            if ord2(self.ell) == ord2(self.k):
                raise PreconditionFailed(
                    f"variant 2 needs ord2(ell) != ord2(k); both equal {ord2(self.k)}")
        else:
            raise InvalidArgument(f"variant must be 1 or 2, got {self.variant}")

    @property
    def q(self) -> int:
        return 2**self.k

    @property
    def Q(self) -> int:
        return 2**self.ell


def lemma4_polynomial(params: Lemma4Params, field: FieldSpec | None = None) -> Polynomial:
    F = quadratic_field(2, params.k) if field is None else field
    Q = params.Q
    lead = Q + 1 if params.variant == 1 else Q
    return Polynomial.from_exponents(F, [lead, 1, 0])


def lemma4_seed(params: Lemma4Params, verify: bool = True) -> SeedPermutation:
    """Seed v = Q+1 with D = X^(Q+1)+X+1 (variant 1) or X^Q+X+1 (variant 2)."""
    F = quadratic_field(2, params.k)
    D = lemma4_polynomial(params, F)
    v = params.Q + 1
    if verify and F.size <= _mu.SCAN_CAP:
        if not permutes_mu(v, D, enumerate_mu(F)):
            raise InternalInconsistency(
                f"seed family fails on mu_(q+1) for k={params.k}, ell={params.ell}, "
                f"variant {params.variant}")
    return SeedPermutation(v, D, f"lemma4-variant-{params.variant}")


@dataclass(frozen=True)
class ConstructionResult:
    r: int
    B: Polynomial
    f: Polynomial
    branch: str
    seed: SeedPermutation
    specs: tuple[MultiplierSpec, ...]
    verified: bool | None = None

    def verify(self, cap: int | None = None) -> bool:
        return is_permutation_bruteforce(self.f, cap)


def smallest_valid_r(residue: int, q: int) -> int:
    """Least positive r with r = residue (mod q+1) and gcd(r, q-1) = 1."""
    r = residue % (q + 1) or q + 1
    # q-1 consecutive candidates cover every class mod (q-1) that this residue allows
    for _ in range(max(q - 1, 1)):
        if gcd(r, q - 1) == 1:
            return r
        r += q + 1
    raise PreconditionFailed(
        f"no positive r = {residue} (mod {q + 1}) has gcd(r, {q - 1}) = 1")


def _check_common(seed: SeedPermutation, specs, r: int, target: int) -> None:
    q = seed.field.q
    if r < 1:
        raise PreconditionFailed(f"r must be a positive integer, got {r}")
    if gcd(r, q - 1) != 1:
        raise PreconditionFailed(f"gcd(r, q-1) = 1 fails: gcd({r}, {q - 1}) = {gcd(r, q - 1)}")
    if (r - target) % (q + 1):
        raise PreconditionFailed(
            f"congruence r = {target % (q + 1)} (mod {q + 1}) fails for r = {r}")
    for sp in specs:
        if not lemma2_condition(sp.s, sp.t, q):
            raise PreconditionFailed(
                f"multiplier condition fails for (s={sp.s}, t={sp.t}) at q={q}: need "
                f"gcd(s+1, q) = 1 and (q+1)/gcd(t, q+1) coprime to s+1")


def _finish(r, B, branch, seed, specs, verify, cap) -> ConstructionResult:
    f = field_form(r, B)
    verified = None
    limit = _mu.SCAN_CAP if cap is None else cap
    if verify and f.owner.size <= limit:
        if not is_permutation_bruteforce(f, limit):
            raise InternalInconsistency(f"{branch} output is not a permutation: r={r}, B={B}")
        verified = True
    return ConstructionResult(r, B, f, branch, seed, specs, verified)


def cor3_product(seed: SeedPermutation, specs: Sequence[MultiplierSpec], r: int,
                 verify: bool = True, cap: int | None = None,
                 branch: str = "cor3.1") -> ConstructionResult:
    """B = D * prod multipliers, r = v + sum s*t (mod q+1)."""
    specs = _as_specs(specs)
    target = seed.v + sum(sp.s * sp.t for sp in specs)
    _check_common(seed, specs, r, target)
    B = poly_mul(seed.D, multiplier_product(specs, seed.field))
    return _finish(r, B, branch, seed, specs, verify, cap)


def cor3_quotient(seed: SeedPermutation, specs: Sequence[MultiplierSpec], r: int,
                  verify: bool = True, cap: int | None = None,
                  branch: str = "cor3.2") -> ConstructionResult:
    """B = D / prod multipliers (exact), r = v - sum s*t (mod q+1)."""
    specs = _as_specs(specs)
    target = seed.v - sum(sp.s * sp.t for sp in specs)
    _check_common(seed, specs, r, target)
    B = exact_divide(seed.D, multiplier_product(specs, seed.field))
    return _finish(r, B, branch, seed, specs, verify, cap)


def cor3_target(seed: SeedPermutation, specs: Sequence[MultiplierSpec], branch: str) -> int:
    """The residue r must have modulo q+1 for the given branch."""
    shift = sum(sp.s * sp.t for sp in _as_specs(specs))
    sign = 1 if branch.endswith(".1") else -1
    return (seed.v + sign * shift) % (seed.field.q + 1)


def cor5(k: int, ell: int, variant: int, branch: int, t: int | None = None,
         r: int | None = None, verify: bool = True, cap: int | None = None) -> ConstructionResult:
    """The m = 1, s = 2 case over characteristic 2 with k even.

    branch 1: B = D * (X^(2t) + X^t + 1), r = Q + 1 + 2t (mod q+1).
    branch 2: B = D / (X^2 + X + 1),       r = Q - 1     (mod q+1),
              allowed when ell is even with variant 1 or ell is odd with variant 2.
    When r is None the smallest valid r is used.
    """
    if k < 1 or k % 2:
        raise PreconditionFailed(f"k must be a positive even integer, got k={k}")
    if branch == 2 and not ((ell % 2 == 0 and variant == 1) or (ell % 2 == 1 and variant == 2)):
        raise PreconditionFailed(
            f"branch 2 needs (ell even and variant 1) or (ell odd and variant 2); "
            f"got ell={ell}, variant {variant}")
    params = Lemma4Params(k, ell, variant)
    q, Q = params.q, params.Q
    if branch == 1:
        if t is None or t < 1:
            raise PreconditionFailed(f"branch 1 needs a positive t, got {t}")
        spec = MultiplierSpec(2, t)
        target = Q + 1 + 2 * t
    elif branch == 2:
        spec = MultiplierSpec(2, 1)
        target = Q - 1
    else:
        raise InvalidArgument(f"branch must be 1 or 2, got {branch}")
    # 3 does not divide 2^k + 1 for even k, so s = 2 always qualifies
    if not lemma2_condition(spec.s, spec.t, q):
        raise InternalInconsistency(f"multiplier condition fails for s=2, t={spec.t}, q={q}")
    if r is None:
        r = smallest_valid_r(target, q)
    seed = lemma4_seed(params, verify=verify)
    label = f"cor5.{branch}"
    if branch == 1:
        return cor3_product(seed, [spec], r, verify, cap, branch=label)
    try:
        return cor3_quotient(seed, [spec], r, verify, cap, branch=label)
    except NotDivisible as exc:
        raise InternalInconsistency(f"branch 2 divisibility fails: {exc}") from exc
