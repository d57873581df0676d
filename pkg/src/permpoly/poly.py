"""Sparse univariate polynomials over a FieldSpec.

A polynomial is a map exponent -> nonzero coefficient, with coefficients held
as element codes of the owner field (see ``permpoly.gf``).  Polynomials with
prime-field coefficients, like the seeds D(X) in GF(2)[X], live in the ambient
field with coefficients 0..p-1; there is no separate subfield type.

Text format, used for all I/O::

    1*X^7 + 1*X^6 + 1*X^5 + 1*X^3 + 1

Coefficients are element codes, exponents strictly decrease, ``c*X`` stands
for exponent one, and the zero polynomial is ``0``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .errors import InternalInconsistency, InvalidArgument, NotDivisible
from .gf import FieldElement, FieldSpec


class Polynomial:
    __slots__ = ("owner", "terms")

    def __init__(self, owner: FieldSpec, terms: Mapping[int, int] = ()):
        clean = {}
        for e, c in dict(terms).items():
            if e < 0:
                raise InvalidArgument(f"negative exponent {e}")
            if isinstance(c, FieldElement):
                c = c.value
            if not 0 <= c < owner.size:
                raise InvalidArgument(f"coefficient code {c} out of range")
            if c:
                clean[e] = c
        self.owner = owner
        self.terms = clean

    @classmethod
    def monomial(cls, owner: FieldSpec, e: int, c: int = 1) -> Polynomial:
        return cls(owner, {e: c})

    @classmethod
    def constant(cls, owner: FieldSpec, c: int = 1) -> Polynomial:
        return cls(owner, {0: c})

    @classmethod
    def zero(cls, owner: FieldSpec) -> Polynomial:
        return cls(owner)

    @classmethod
    def from_exponents(cls, owner: FieldSpec, exponents: Iterable[int]) -> Polynomial:
        """Sum of X^e over the given exponents, repeats adding up."""
        terms: dict[int, int] = {}
        for e in exponents:
            terms[e] = owner.add(terms.get(e, 0), 1)
        return cls(owner, terms)

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return max(self.terms, default=-1)

    def coeff(self, e: int) -> FieldElement:
        return FieldElement(self.owner, self.terms.get(e, 0))

    def items(self):
        """(exponent, code) pairs, highest exponent first."""
        return sorted(self.terms.items(), reverse=True)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.owner == other.owner and self.terms == other.terms

    def __hash__(self):
        return hash((self.owner, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Polynomial({format_poly(self)})"

    def __str__(self):
        return format_poly(self)

    def __add__(self, other: Polynomial) -> Polynomial:
        F = _same_owner(self, other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = F.add(terms.get(e, 0), c)
        return Polynomial(F, terms)

    def __neg__(self) -> Polynomial:
        F = self.owner
        return Polynomial(F, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other: Polynomial) -> Polynomial:
        return poly_mul(self, other)

    def scaled(self, c: int) -> Polynomial:
        """Multiply every coefficient by the element with code c."""
        F = self.owner
        return Polynomial(F, {e: F.mul(c, v) for e, v in self.terms.items()})

    def shifted(self, r: int) -> Polynomial:
        """X^r times self."""
        return Polynomial(self.owner, {e + r: c for e, c in self.terms.items()})

    def evaluator(self) -> Callable[[int], int]:
        """Return a function mapping an element code x to the code of f(x).

        Reuses the field's log tables across calls; this is what sweeps use.
        """
        F = self.owner
        items = list(self.terms.items())
        const = self.terms.get(0, 0)
        tables = F._tables
        if tables is None:
            def slow(x: int) -> int:
                acc = 0
                for e, c in items:
                    acc = F.add(acc, F.mul(c, F.pow(x, e)))
                return acc
            return slow

        exp, log = tables
        order = F.order
        logged = [(e, log[c]) for e, c in items]
        if F.p == 2:
            def fast2(x: int) -> int:
                if x == 0:
                    return const
                lx = log[x]
                acc = 0
                for e, lc in logged:
                    acc ^= exp[(lc + lx * e) % order]
                return acc
            return fast2

        add = F.add

        def fast(x: int) -> int:
            if x == 0:
                return const
            lx = log[x]
            acc = 0
            for e, lc in logged:
                acc = add(acc, exp[(lc + lx * e) % order])
            return acc
        return fast


@dataclass(frozen=True)
class MultiplierSpec:
    """One factor sum_{j=0}^{s} X^(j*t) of the multiplier product."""
    s: int
    t: int

    def __post_init__(self):
        if not (isinstance(self.s, int) and isinstance(self.t, int)):
            raise InvalidArgument("s and t must be integers")
        if self.s < 1 or self.t < 1:
            raise InvalidArgument(f"s and t must be positive, got s={self.s}, t={self.t}")

    def as_pair(self) -> list[int]:
        return [self.s, self.t]


def _same_owner(f: Polynomial, g: Polynomial) -> FieldSpec:
    if f.owner != g.owner:
        raise InvalidArgument("polynomials are over different fields")
    return f.owner


def evaluate(f: Polynomial, x: FieldElement) -> FieldElement:
    """f(x), with 0^0 = 1 so that f(0) is the constant term."""
    if x.owner != f.owner:
        raise InvalidArgument("point and polynomial are over different fields")
    F = f.owner
    acc = 0
    for e, c in f.terms.items():
        acc = F.add(acc, F.mul(c, F.pow(x.value, e)))
    return FieldElement(F, acc)


def multiplier_poly(spec: MultiplierSpec, owner: FieldSpec) -> Polynomial:
    return Polynomial(owner, {j * spec.t: 1 for j in range(spec.s + 1)})


def multiplier_product(specs: Iterable[MultiplierSpec], owner: FieldSpec) -> Polynomial:
    out = Polynomial.constant(owner)
    for spec in specs:
        out = poly_mul(out, multiplier_poly(spec, owner))
    return out


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    F = _same_owner(f, g)
    terms: dict[int, int] = {}
    for e1, c1 in f.terms.items():
        for e2, c2 in g.terms.items():
            e = e1 + e2
            terms[e] = F.add(terms.get(e, 0), F.mul(c1, c2))
    return Polynomial(F, terms)


def exact_divide(num: Polynomial, den: Polynomial) -> Polynomial:
    """Quotient q with num == den * q, or NotDivisible."""
    F = _same_owner(num, den)
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    dd = den.degree
    lead_inv = F.inv(den.terms[dd])
    rem = dict(num.terms)
    quo: dict[int, int] = {}
    while rem:
        top = max(rem)
        if top < dd:
            break
        c = F.mul(rem[top], lead_inv)
        shift = top - dd
        quo[shift] = c
        for de, dc in den.terms.items():
            k = shift + de
            v = F.sub(rem.get(k, 0), F.mul(c, dc))
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    if rem:
        raise NotDivisible(f"{format_poly(den)} does not divide {format_poly(num)}")
    quotient = Polynomial(F, quo)
    if poly_mul(den, quotient) != num:
        raise InternalInconsistency("quotient fails re-multiplication check")
    return quotient


def reduce_mod_field(f: Polynomial) -> Polynomial:
    """Reduce modulo X^(q^2) - X: exponents e > 0 go to ((e-1) mod (q^2-1)) + 1.

    The result has degree < q^2 and induces the same function on GF(q^2),
    including at 0.
    """
    F = f.owner
    if not F.quadratic:
        raise InvalidArgument(f"{F!r} is not a quadratic extension GF(q^2)")
    order = F.order
    terms: dict[int, int] = {}
    for e, c in f.terms.items():
        r = (e - 1) % order + 1 if e > 0 else 0
        terms[r] = F.add(terms.get(r, 0), c)
    return Polynomial(F, terms)


def compose_power(f: Polynomial, e: int) -> Polynomial:
    """f(X^e) reduced modulo X^(q^2) - X."""
    if e < 1:
        raise InvalidArgument(f"composition exponent must be positive, got {e}")
    return reduce_mod_field(Polynomial(f.owner, {d * e: c for d, c in f.terms.items()}))


def term_count(f: Polynomial) -> int:
    return len(f.terms)


def format_poly(f: Polynomial) -> str:
    parts = []
    for e, c in f.items():
        if e == 0:
            parts.append(str(c))
        elif e == 1:
            parts.append(f"{c}*X")
        else:
            parts.append(f"{c}*X^{e}")
    return " + ".join(parts) or "0"


_TERM = re.compile(r"^(?:(\d+)(?:\s*\*\s*X(?:\s*\^\s*(\d+))?)?|X(?:\s*\^\s*(\d+))?)$")


def parse_poly(text: str, owner: FieldSpec) -> Polynomial:
    """Parse the text format produced by ``format_poly``.

    A bare ``X^e`` (coefficient 1) is accepted too.  Repeated exponents add.
    """
    text = text.strip()
    if not text:
        raise InvalidArgument("empty polynomial text")
    terms: dict[int, int] = {}
    for raw in text.split("+"):
        tok = raw.strip()
        m = _TERM.match(tok)
        if not m:
            raise InvalidArgument(f"cannot parse term {tok!r}")
        coeff, exp1, exp2 = m.groups()
        if coeff is None:
            c = 1
            e = int(exp2) if exp2 is not None else 1
        else:
            c = int(coeff)
            if "X" in tok:
                e = int(exp1) if exp1 is not None else 1
            else:
                e = 0
        if c >= owner.size:
            raise InvalidArgument(f"coefficient code {c} out of range for {owner!r}")
        terms[e] = owner.add(terms.get(e, 0), c)
    return Polynomial(owner, terms)
