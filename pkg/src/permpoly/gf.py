"""Prime-power finite fields GF(p^n) with exact element arithmetic.

Elements are encoded as integers whose base-p digits are the coordinates in
the power basis of the modulus, lowest degree least significant.  So in
GF(4) = GF(2)[w]/(w^2+w+1) the element w+1 has code 3.  Polynomials over
GF(p) used for building fields are plain coefficient lists, lowest degree
first.

Fields of at most ``TABLE_CAP`` elements get exp/log tables on first use,
which makes multiplication and powering O(1).  Larger fields fall back to
schoolbook arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

from .errors import InvalidArgument

TABLE_CAP = 2**20


# Integer helpers (trial division is plenty for desk-scale inputs).

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as {prime: exponent}."""
    if n < 1:
        raise InvalidArgument(f"cannot factor {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def to_digits(value: int, p: int, n: int) -> list[int]:
    digits = []
    for _ in range(n):
        value, d = divmod(value, p)
        digits.append(d)
    return digits


def from_digits(digits: Sequence[int], p: int) -> int:
    value = 0
    for d in reversed(digits):
        value = value * p + d
    return value


# Polynomials over GF(p) as coefficient lists, lowest degree first.

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _psub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    size = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
           for i in range(size)]
    return _trim(out)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        e >>= 1
        if e:
            base = _pmod(_pmul(base, base, p), m, p)
    return result


def _pegcd_inverse(a: list[int], m: list[int], p: int) -> list[int]:
    """Inverse of a modulo m over GF(p); a must be coprime to m."""
    r0, r1 = _trim(list(m)), _pmod(a, m, p)
    s0, s1 = [], [1]
    while r1:
        # one long-division step r0 = quo*r1 + rem
        quo = [0] * max(len(r0) - len(r1) + 1, 1)
        rem = list(r0)
        inv_lead = pow(r1[-1], -1, p)
        while len(rem) >= len(r1) and rem:
            c = rem[-1] * inv_lead % p
            shift = len(rem) - len(r1)
            quo[shift] = c
            for i, ri in enumerate(r1):
                rem[shift + i] = (rem[shift + i] - c * ri) % p
            _trim(rem)
        r0, r1 = r1, rem
        s0, s1 = s1, _psub(s0, _pmul(_trim(quo), s1, p), p)
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    scale = pow(r0[0], -1, p)
    return [c * scale % p for c in s0]


def is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Rabin's test: f of degree n is irreducible over GF(p) iff
    X^(p^n) = X mod f and gcd(X^(p^(n/l)) - X, f) = 1 for every prime l | n.

    ``coeffs`` lists the coefficients lowest degree first.
    """
    if not is_prime(p):
        raise InvalidArgument(f"{p} is not prime")
    f = _trim([c % p for c in coeffs])
    if len(f) < 2:
        raise InvalidArgument("irreducibility is undefined for constants")
    inv_lead = pow(f[-1], -1, p)
    f = [c * inv_lead % p for c in f]
    n = len(f) - 1
    if n == 1:
        return True
    x = [0, 1]
    frob = [x]  # frob[j] = X^(p^j) mod f
    for _ in range(n):
        frob.append(_ppowmod(frob[-1], p, f, p))
    if frob[n] != x:
        return False
    for ell in factorize(n):
        g = _pgcd(_psub(frob[n // ell], x, p), f, p)
        if len(g) > 1:
            return False
    return True


class FieldSpec:
    """The field GF(p^n) = GF(p)[X]/(modulus).

    When n is even the field is also viewed as GF(q^2) with q = p^k, n = 2k,
    and ``k``/``q`` are set; otherwise they are None.
    """

    def __init__(self, p: int, n: int, modulus: Sequence[int]):
        modulus = tuple(modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise InvalidArgument("modulus must be monic of degree n")
        if not is_irreducible(modulus, p):
            raise InvalidArgument(f"modulus {format_fp_poly(modulus)} is reducible over GF({p})")
        self.p = p
        self.n = n
        self.modulus = modulus
        self.size = p**n
        self.order = self.size - 1
        self.k = n // 2 if n % 2 == 0 else None
        self.q = p**self.k if self.k is not None else None
        self._mod_bits = from_digits(modulus, 2) if p == 2 else None

    def __eq__(self, other):
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.n, self.modulus) == (other.p, other.n, other.modulus)

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.n}, modulus={format_fp_poly(self.modulus)})"

    def __call__(self, value: int | Sequence[int]) -> FieldElement:
        """Element from a code or from a coordinate sequence."""
        if isinstance(value, int):
            if not 0 <= value < self.size:
                raise InvalidArgument(f"code {value} out of range for {self!r}")
            return FieldElement(self, value)
        digits = [int(c) % self.p for c in value]
        if len(digits) > self.n:
            raise InvalidArgument("too many coordinates")
        return FieldElement(self, from_digits(digits, self.p))

    @property
    def quadratic(self) -> bool:
        return self.k is not None

    def elements(self) -> Iterator[FieldElement]:
        for code in range(self.size):
            yield FieldElement(self, code)

    def digits(self, code: int) -> list[int]:
        return to_digits(code, self.p, self.n)

    # Arithmetic on element codes.  These are the hot paths; no validation.

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        p = self.p
        out, scale = 0, 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            out += (da + db) % p * scale
            scale *= p
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        p = self.p
        out, scale = 0, 1
        while a:
            a, d = divmod(a, p)
            out += (-d) % p * scale
            scale *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def scale(self, c: int, a: int) -> int:
        """Multiply element a by the prime-field integer c."""
        c %= self.p
        if c == 0 or a == 0:
            return 0
        if self.p == 2:
            return a
        return from_digits([d * c % self.p for d in self.digits(a)], self.p)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        tables = self._tables
        if tables is not None:
            exp, log = tables
            return exp[(log[a] + log[b]) % self.order]
        return self._slow_mul(a, b)

    def inv(self, a: int) -> int:
        """Inverse via extended Euclid against the modulus."""
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        p = self.p
        inv = _pegcd_inverse(_trim(self.digits(a)), list(self.modulus), p)
        return from_digits(inv, p)

    def pow(self, a: int, e: int) -> int:
        """a^e, using the log table when available.  0^0 = 1."""
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        tables = self._tables
        if tables is not None:
            exp, log = tables
            return exp[log[a] * e % self.order]
        return self.pow_sqmul(a, e)

    def pow_sqmul(self, a: int, e: int) -> int:
        if e < 0:
            a = self.inv(a)
            e = -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def _slow_mul(self, a: int, b: int) -> int:
        if self.p == 2:
            prod_bits = 0
            while b:
                if b & 1:
                    prod_bits ^= a
                a <<= 1
                b >>= 1
            mod = self._mod_bits
            top = self.n
            for shift in range(prod_bits.bit_length() - 1 - top, -1, -1):
                if (prod_bits >> (shift + top)) & 1:
                    prod_bits ^= mod << shift
            return prod_bits
        p = self.p
        product = _pmul(_trim(self.digits(a)), _trim(self.digits(b)), p)
        return from_digits(_pmod(product, list(self.modulus), p), p)

    @cached_property
    def primitive_element(self) -> int:
        """Code of the first generator of the multiplicative group, scanning
        codes in increasing order."""
        if self.order == 1:
            return 1
        cofactors = [self.order // ell for ell in factorize(self.order)]
        for g in range(2, self.size):
            if all(self._slow_pow(g, c) != 1 for c in cofactors):
                return g
        raise AssertionError("multiplicative group has no generator")

    def _slow_pow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._slow_mul(result, a)
            e >>= 1
            if e:
                a = self._slow_mul(a, a)
        return result

    @cached_property
    def _tables(self):
        if self.size > TABLE_CAP:
            return None
        g = self.primitive_element
        exp = [1] * self.order
        log = [0] * self.size
        x = 1
        for i in range(self.order):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, g)
        return exp, log


@dataclass(frozen=True)
class FieldElement:
    owner: FieldSpec
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.owner.digits(self.value))

    def _check(self, other) -> FieldElement:
        if isinstance(other, int):
            return FieldElement(self.owner, self.owner.scale(other, 1))
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.owner != self.owner:
            raise InvalidArgument("elements belong to different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.owner, self.owner.add(self.value, other.value))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.owner, self.owner.sub(self.value, other.value))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return FieldElement(self.owner, self.owner.neg(self.value))

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.owner, self.owner.mul(self.value, other.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * fe_inv(other)

    def __pow__(self, e: int):
        return fe_pow(self, e)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{format_fp_poly(self.coeffs, var='w')} in GF({self.owner.p}^{self.owner.n})"


def _same_owner(a: FieldElement, b: FieldElement) -> FieldSpec:
    if a.owner != b.owner:
        raise InvalidArgument("elements belong to different fields")
    return a.owner


def fe_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return FieldElement(_same_owner(a, b), a.owner.add(a.value, b.value))


def fe_sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return FieldElement(_same_owner(a, b), a.owner.sub(a.value, b.value))


def fe_neg(a: FieldElement) -> FieldElement:
    return FieldElement(a.owner, a.owner.neg(a.value))


def fe_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return FieldElement(_same_owner(a, b), a.owner.mul(a.value, b.value))


def fe_inv(a: FieldElement) -> FieldElement:
    return FieldElement(a.owner, a.owner.inv(a.value))


def fe_pow(a: FieldElement, e: int) -> FieldElement:
    """a^e by square-and-multiply; negative e inverts first."""
    if a.value == 0 and e < 0:
        raise ZeroDivisionError("zero to a negative power")
    if a.value == 0:
        return FieldElement(a.owner, 1 if e == 0 else 0)
    return FieldElement(a.owner, a.owner.pow_sqmul(a.value, e))


def format_fp_poly(coeffs: Sequence[int], var: str = "X") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(terms) or "0"


@lru_cache(maxsize=None)
def make_field(p: int, n: int) -> FieldSpec:
    """GF(p^n) built on the lexicographically smallest monic irreducible
    of degree n (coefficient tuples read as base-p integers, constant term
    least significant)."""
    if not isinstance(p, int) or not is_prime(p):
        raise InvalidArgument(f"{p} is not prime")
    if not isinstance(n, int) or n < 1:
        raise InvalidArgument(f"extension degree must be >= 1, got {n}")
    for m in range(p**n):
        coeffs = to_digits(m, p, n) + [1]
        if is_irreducible(coeffs, p):
            return FieldSpec(p, n, coeffs)
    raise AssertionError(f"no irreducible polynomial of degree {n} over GF({p})")


def quadratic_field(p: int, k: int) -> FieldSpec:
    """GF(q^2) with q = p^k."""
    return make_field(p, 2 * k)


def prime_power_parts(q: int) -> tuple[int, int]:
    """(p, k) with q = p^k, or InvalidArgument if q is not a prime power."""
    if q < 2:
        raise InvalidArgument(f"{q} is not a prime power")
    fac = factorize(q)
    if len(fac) != 1:
        raise InvalidArgument(f"{q} is not a prime power")
    (p, k), = fac.items()
    return p, k


__all__ = [
    "FieldElement", "FieldSpec", "TABLE_CAP", "factorize", "fe_add", "fe_inv",
    "fe_mul", "fe_neg", "fe_pow", "fe_sub", "format_fp_poly", "is_irreducible",
    "is_prime", "make_field", "prime_power_parts", "quadratic_field",
]
