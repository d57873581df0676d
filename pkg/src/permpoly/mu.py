"""The subgroup mu_{q+1} of GF(q^2)* and permutation tests.

``is_permutation_bruteforce`` is the ground truth everything else is checked
against.  ``lemma1_check`` is the fast criterion: X^r A(X^(q-1)) permutes
GF(q^2) exactly when gcd(r, q-1) = 1 and x -> x^r A(x)^(q-1) permutes mu_{q+1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from math import gcd

from .errors import InternalInconsistency, InvalidArgument, ResourceLimit
from .gf import FieldElement, FieldSpec
from .poly import Polynomial, reduce_mod_field

# Largest field we are willing to scan element by element.  Module-level so
# that bigger machines can raise it.
SCAN_CAP = 2**26


@dataclass(frozen=True)
class MuGroup:
    owner: FieldSpec
    codes: tuple[int, ...]
    _members: frozenset = dc_field(repr=False, compare=False)

    @property
    def elements(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(self.owner, c) for c in self.codes)

    def __len__(self):
        return len(self.codes)

    def __contains__(self, x):
        if isinstance(x, FieldElement):
            return x.owner == self.owner and x.value in self._members
        return x in self._members


def _require_quadratic(field: FieldSpec) -> int:
    if not field.quadratic:
        raise InvalidArgument(f"{field!r} is not a quadratic extension GF(q^2)")
    return field.q


def _check_cap(field: FieldSpec, cap: int | None) -> None:
    cap = SCAN_CAP if cap is None else cap
    if field.size > cap:
        raise ResourceLimit(f"field of size {field.size} exceeds scan cap {cap}")


def enumerate_mu(field: FieldSpec, mode: str = "fast", cap: int | None = None) -> MuGroup:
    """All x with x^(q+1) = 1, sorted by code.

    ``scan`` tests every field element; ``fast`` takes the powers of
    g^(q-1) for a primitive element g.
    """
    q = _require_quadratic(field)
    if mode == "scan":
        _check_cap(field, cap)
        codes = [x for x in range(1, field.size) if field.pow(x, q + 1) == 1]
    elif mode == "fast":
        return _fast_mu(field)
    else:
        raise InvalidArgument(f"unknown mode {mode!r}")
    return MuGroup(field, tuple(codes), frozenset(codes))


@lru_cache(maxsize=64)
def _fast_mu(field: FieldSpec) -> MuGroup:
    q = field.q
    h = field.pow(field.primitive_element, q - 1)
    codes = []
    x = 1
    for _ in range(q + 1):
        codes.append(x)
        x = field.mul(x, h)
    if x != 1 or len(set(codes)) != q + 1:
        raise InternalInconsistency("g^(q-1) does not have order q+1")
    codes.sort()
    return MuGroup(field, tuple(codes), frozenset(codes))


def permutes_mu(r: int, A: Polynomial, mu: MuGroup) -> bool:
    """Whether x -> x^r A(x)^(q-1) is a bijection of mu_{q+1}.

    Any r is allowed; it only matters modulo q+1 on mu_{q+1}.
    """
    F = mu.owner
    if A.owner != F:
        raise InvalidArgument("polynomial and subgroup are over different fields")
    q = F.q
    r %= q + 1
    ev = A.evaluator()
    seen = set()
    for x in mu.codes:
        a = ev(x)
        if a == 0:
            return False  # g(x) = 0 lies outside mu_{q+1}
        y = F.mul(F.pow(x, r), F.pow(a, q - 1))
        if y in seen:
            return False
        seen.add(y)
    if not seen <= mu._members:
        raise InternalInconsistency("x^r A(x)^(q-1) left mu_{q+1}")
    return True


def is_permutation_bruteforce(f: Polynomial, cap: int | None = None) -> bool:
    """Evaluate f on every field element; true iff no value repeats."""
    F = f.owner
    _check_cap(F, cap)
    ev = f.evaluator()
    seen = set()
    for x in range(F.size):
        y = ev(x)
        if y in seen:
            return False
        seen.add(y)
    return True


def field_form(r: int, A: Polynomial) -> Polynomial:
    """X^r A(X^(q-1)) reduced modulo X^(q^2) - X."""
    F = A.owner
    q = _require_quadratic(F)
    return reduce_mod_field(
        Polynomial(F, {r + e * (q - 1): c for e, c in A.terms.items()}))


def lemma1_sides(r: int, A: Polynomial, mu: MuGroup | None = None) -> tuple[bool, bool]:
    """(gcd(r, q-1) == 1, x^r A(x)^(q-1) permutes mu_{q+1})."""
    if r <= 0:
        raise InvalidArgument(f"r must be positive, got {r}")
    q = _require_quadratic(A.owner)
    mu = enumerate_mu(A.owner) if mu is None else mu
    return gcd(r, q - 1) == 1, permutes_mu(r, A, mu)


def lemma1_check(r: int, A: Polynomial, mu: MuGroup | None = None) -> bool:
    """Criterion for X^r A(X^(q-1)) to permute GF(q^2), decided on mu_{q+1}."""
    gcd_ok, mu_ok = lemma1_sides(r, A, mu)
    return gcd_ok and mu_ok
