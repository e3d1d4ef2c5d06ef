"""Exact coefficient fields: the rationals, cyclotomic fields Q(zeta_n) and
prime fields GF(p).

Scalars are immutable and always stored in canonical form, so equality is
plain comparison of representations.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

from .errors import (
    DivisionByZero,
    FieldMismatch,
    MalformedScalar,
    WrongField,
    ZeroDenominator,
    ZeroInput,
)


# -- integer polynomial helpers (coefficient lists, lowest degree first) --

def _trim(poly):
    poly = list(poly)
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def _poly_divexact(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        if c % lead:
            raise ArithmeticError("inexact polynomial division")
        c //= lead
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(_trim(num)):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Integer coefficients of the n-th cyclotomic polynomial, lowest first.

    Computed by dividing x^n - 1 by Phi_d for every proper divisor d of n.
    """
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _divisors(n: int) -> list:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


# -- fields --

@dataclass(frozen=True)
class FieldDescriptor:
    """Base class; use :class:`Rationals`, :class:`CyclotomicField` or
    :class:`PrimeField`."""

    @property
    def characteristic(self) -> int:
        return 0

    @property
    def zero(self) -> "Scalar":
        return Scalar(self, self._zero())

    @property
    def one(self) -> "Scalar":
        return Scalar(self, self._from_fraction(Fraction(1)))

    def __call__(self, value) -> "Scalar":
        return self.coerce(value)

    def coerce(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field is not self and value.field != self:
                raise FieldMismatch(f"scalar from {value.field} used in {self}")
            return value
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, (int, Fraction)):
            return Scalar(self, self._from_fraction(Fraction(value)))
        if isinstance(value, str):
            return parse_scalar(value, self)
        raise TypeError(f"cannot coerce {value!r} into {self}")

    # subclasses implement the raw operations on canonical values
    def _zero(self):
        raise NotImplementedError

    def _from_fraction(self, q):
        raise NotImplementedError


@dataclass(frozen=True)
class Rationals(FieldDescriptor):
    def __str__(self):
        return "Q"

    def _zero(self):
        return Fraction(0)

    def _from_fraction(self, q):
        return Fraction(q)

    def _add(self, a, b):
        return a + b

    def _sub(self, a, b):
        return a - b

    def _mul(self, a, b):
        return a * b

    def _neg(self, a):
        return -a

    def _inv(self, a):
        return 1 / a

    def _is_zero(self, a):
        return a == 0

    def _format(self, a):
        return str(a)


@dataclass(frozen=True)
class PrimeField(FieldDescriptor):
    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def __str__(self):
        return f"GF({self.p})"

    @property
    def characteristic(self) -> int:
        return self.p

    def _zero(self):
        return 0

    def _from_fraction(self, q):
        den = q.denominator % self.p
        if den == 0:
            raise ZeroDenominator(f"denominator divisible by {self.p}")
        return q.numerator * pow(den, -1, self.p) % self.p

    def _add(self, a, b):
        return (a + b) % self.p

    def _sub(self, a, b):
        return (a - b) % self.p

    def _mul(self, a, b):
        return a * b % self.p

    def _neg(self, a):
        return -a % self.p

    def _inv(self, a):
        return pow(a, -1, self.p)

    def _is_zero(self, a):
        return a == 0

    def _format(self, a):
        return str(a)


@dataclass(frozen=True)
class CyclotomicField(FieldDescriptor):
    """Q(zeta_n) as Q[x]/(Phi_n); elements are tuples of phi(n) fractions."""

    n: int

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("cyclotomic order must be at least 3")

    def __str__(self):
        return f"Q(zeta_{self.n})"

    @property
    def modulus(self) -> tuple:
        return cyclotomic_polynomial(self.n)

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    def _zero(self):
        return (Fraction(0),) * self.degree

    def _from_fraction(self, q):
        return (Fraction(q),) + (Fraction(0),) * (self.degree - 1)

    def _reduce(self, coeffs):
        coeffs = [Fraction(c) for c in coeffs]
        mod = self.modulus
        d = self.degree
        for i in range(len(coeffs) - 1, d - 1, -1):
            c = coeffs[i]
            if c:
                for j in range(d + 1):
                    coeffs[i - d + j] -= c * mod[j]
        coeffs = coeffs[:d] + [Fraction(0)] * (d - len(coeffs))
        return tuple(coeffs)

    def power_of_generator(self, k: int):
        k %= self.n
        return Scalar(self, self._reduce([0] * k + [1]))

    @property
    def generator(self) -> "Scalar":
        return self.power_of_generator(1)

    def _add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def _mul(self, a, b):
        out = [Fraction(0)] * (2 * self.degree - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return self._reduce(out)

    def _neg(self, a):
        return tuple(-x for x in a)

    def _inv(self, a):
        # extended Euclid in Q[x] between a and Phi_n
        r0 = [Fraction(c) for c in self.modulus]
        r1 = _trim(a)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, r = _qpoly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _qpoly_sub(s0, _qpoly_mul(q, s1))
            if not r1:
                raise ArithmeticError("element not invertible")
        # r1 is a nonzero constant
        c = r1[0]
        return self._reduce([x / c for x in s1])

    def _is_zero(self, a):
        return not any(a)

    def _format(self, a):
        parts = []
        for k, c in enumerate(a):
            if not c:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "z" if k == 1 else f"z^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts) if parts else "0"


def _qpoly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _qpoly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _qpoly_divmod(num, den):
    num = [Fraction(c) for c in num]
    den = _trim(den)
    if len(num) < len(den):
        return [], _trim(num)
    q = [Fraction(0)] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1] / den[-1]
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    return _trim(q), _trim(num[: len(den) - 1])


def field_from_string(text: str) -> FieldDescriptor:
    """Parse a field name: ``Q``, ``Q(zeta_5)``, ``GF(7)`` and a few aliases."""
    t = text.strip().replace(" ", "")
    if t in ("Q", "QQ", "Rationals"):
        return Rationals()
    m = re.fullmatch(r"(?:Q\(zeta_?(\d+)\)|CF\((\d+)\)|cyclotomic:(\d+))", t)
    if m:
        n = int(next(g for g in m.groups() if g))
        try:
            return CyclotomicField(n)
        except ValueError as exc:
            raise MalformedScalar(str(exc)) from None
    m = re.fullmatch(r"(?:GF\((\d+)\)|F_?(\d+)|GF(\d+))", t)
    if m:
        p = int(next(g for g in m.groups() if g))
        try:
            return PrimeField(p)
        except ValueError as exc:
            raise MalformedScalar(str(exc)) from None
    raise MalformedScalar(f"unknown field {text!r}")


# -- scalars --

class Scalar:
    __slots__ = ("field", "value")

    def __init__(self, field: FieldDescriptor, value):
        self.field = field
        self.value = value

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        return self.field.coerce(other).value

    def __add__(self, other):
        return Scalar(self.field, self.field._add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.field._sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return Scalar(self.field, self.field._sub(self._other(other), self.value))

    def __mul__(self, other):
        if isinstance(other, Scalar) or isinstance(other, (int, Fraction)):
            return Scalar(self.field, self.field._mul(self.value, self._other(other)))
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.field, self.field._neg(self.value))

    def __truediv__(self, other):
        return self * Scalar(self.field, self._other(other)).inverse()

    def __rtruediv__(self, other):
        return self.field.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "Scalar":
        return field_invert(self)

    def __bool__(self):
        return not self.field._is_zero(self.value)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self.field.coerce(other).value
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        return self.field._format(self.value)

    def __repr__(self):
        return f"Scalar({self}, {self.field})"


_TERM = re.compile(
    r"""(?P<sign>[+-])?
        (?:
          (?P<coeff>\d+(?:/\d+)?)(?:\*?(?P<z1>z)(?:\^(?P<e1>\d+))?)?
          |(?P<z2>z)(?:\^(?P<e2>\d+))?
        )""",
    re.VERBOSE,
)


def parse_scalar(text: str, field: FieldDescriptor) -> Scalar:
    """Parse ``text`` in the scalar grammar and return the canonical scalar.

    Integers (``-3``), fractions (``-3/6``) and, for cyclotomic fields, sums of
    terms ``coeff*z^exp`` where ``z`` denotes the chosen primitive root.
    """
    if not isinstance(text, str):
        raise MalformedScalar(f"scalar must be a string, got {text!r}")
    s = text.replace(" ", "")
    if not s:
        raise MalformedScalar("empty scalar")
    pos = 0
    total = field.zero
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not first and not m.group("sign")):
            raise MalformedScalar(f"cannot parse {text!r}")
        first = False
        pos = m.end()
        sign = -1 if m.group("sign") == "-" else 1
        coeff = m.group("coeff")
        has_z = m.group("z1") or m.group("z2")
        exp = m.group("e1") or m.group("e2")
        if coeff is not None:
            num, _, den = coeff.partition("/")
            if den and int(den) == 0:
                raise ZeroDenominator(f"zero denominator in {text!r}")
            q = Fraction(int(num), int(den) if den else 1)
        else:
            q = Fraction(1)
        term = field.coerce(sign * q)
        if has_z:
            if not isinstance(field, CyclotomicField):
                raise WrongField(f"'z' is only meaningful over a cyclotomic field, not {field}")
            term = term * field.power_of_generator(int(exp) if exp else 1)
        total = total + term
    return total


def format_scalar(s: Scalar) -> str:
    return str(s)


def field_invert(s: Scalar) -> Scalar:
    if not s:
        raise DivisionByZero("inverse of zero")
    return Scalar(s.field, s.field._inv(s.value))


def is_root_of_unity(s: Scalar) -> Optional[int]:
    """Exact order of ``s`` as a root of unity, or ``None`` if it is not one."""
    if not s:
        raise ZeroInput("zero is not a unit")
    f = s.field
    one = f.one
    if isinstance(f, Rationals):
        if s == one:
            return 1
        if s == -one:
            return 2
        return None
    if isinstance(f, CyclotomicField):
        m = f.n * 2 // math.gcd(2, f.n)
        if s ** m != one:
            return None
        return next(d for d in _divisors(m) if s ** d == one)
    if isinstance(f, PrimeField):
        return next(d for d in _divisors(f.p - 1) if s ** d == one)
    raise TypeError(f"unsupported field {f}")


def multiplicative_order(s: Scalar, bound: int) -> Optional[int]:
    """Least n <= bound with s^n = 1, else ``None``."""
    if not s:
        raise ZeroInput("zero has no multiplicative order")
    n = is_root_of_unity(s)
    if n is None or n > bound:
        return None
    return n


# -- root search, used when splitting semisimple algebras --

def _rational_root_candidates(coeffs: Iterable[Fraction]) -> list:
    coeffs = list(coeffs)
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    while ints and ints[0] == 0:
        ints.pop(0)
    out = [Fraction(0)]
    if len(ints) < 2:
        return out
    a0, an = abs(ints[0]), abs(ints[-1])
    if a0 > 10**12 or an > 10**12:
        return out
    for p in _divisors(a0):
        for q in _divisors(an):
            out.append(Fraction(p, q))
            out.append(Fraction(-p, q))
    return out


def _eval_poly(coeffs, x):
    acc = x.field.zero
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def find_root(coeffs: list) -> Optional[Scalar]:
    """Return some root in the field of the polynomial sum coeffs[i] t^i.

    Exhaustive over GF(p); the rational root test over Q. Over Q(zeta_n) the
    search covers products of roots of unity with rational candidates derived
    from the norms of the extreme coefficients, so a ``None`` there is not a
    proof that no root exists.
    """
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if len(coeffs) < 2:
        return None
    f = coeffs[0].field
    if not coeffs[0]:
        return f.zero
    if isinstance(f, PrimeField):
        if f.p > 200000:
            return None
        for r in range(f.p):
            x = f(r)
            if not _eval_poly(coeffs, x):
                return x
        return None
    if isinstance(f, Rationals):
        for q in _rational_root_candidates(c.value for c in coeffs):
            x = f(q)
            if not _eval_poly(coeffs, x):
                return x
        return None
    if isinstance(f, CyclotomicField):
        rational = all(not any(c.value[1:]) for c in coeffs)
        cands = []
        if rational:
            cands.extend(_rational_root_candidates(c.value[0] for c in coeffs))
        ratio = coeffs[0] / coeffs[-1]
        norm = _norm(ratio)
        mags = {abs(q) for q in _rational_root_candidates([norm, Fraction(0), Fraction(1)])}
        mags |= {Fraction(1), Fraction(2), Fraction(1, 2)}
        m = f.n * 2 // math.gcd(2, f.n)
        units = [f.power_of_generator(k) for k in range(f.n)]
        units += [-u for u in units] if m != f.n else []
        seen = set()
        for q in cands:
            x = f(q)
            if x not in seen:
                seen.add(x)
                if not _eval_poly(coeffs, x):
                    return x
        for q in sorted(mags):
            for u in units:
                x = u * q
                if x in seen:
                    continue
                seen.add(x)
                if not _eval_poly(coeffs, x):
                    return x
        return None
    return None


def _norm(s: Scalar) -> Fraction:
    """Field norm from Q(zeta_n) down to Q (product of Galois conjugates)."""
    f = s.field
    acc = f.one
    for k in range(1, f.n):
        if math.gcd(k, f.n) == 1:
            conj = f.zero
            for i, c in enumerate(s.value):
                if c:
                    conj = conj + f.power_of_generator(i * k) * c
            acc = acc * conj
    return acc.value[0]


def random_scalar(field: FieldDescriptor, rng, size: int = 5) -> Scalar:
    """Small random scalar, handy for property tests and randomized searches."""
    if isinstance(field, PrimeField):
        return field(rng.randrange(field.p))
    if isinstance(field, CyclotomicField):
        total = field.zero
        for k in range(field.degree):
            q = Fraction(rng.randint(-size, size), rng.randint(1, size))
            total = total + field.power_of_generator(k) * q
        return total
    return field(Fraction(rng.randint(-size, size), rng.randint(1, size)))
