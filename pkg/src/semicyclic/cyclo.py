"""
Exact scalars in Q(q)[a, 1/a] where q = exp(i*pi/N) for odd N >= 3.

A field element of Q(q) is stored as a pair ``(nums, den)``: a tuple of
``phi`` integers giving the coefficients of 1, q, ..., q^(phi-1), and a
positive common denominator.  The pair is kept in lowest terms, so equality
of canonical forms is equality of elements.

A :class:`CycScalar` is a Laurent polynomial in the formal unit ``a`` whose
coefficients are such field elements.
"""
from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Union


class ParameterError(ValueError):
    """Raised for out-of-range parameters (even N, negative factorial, ...)."""


class FieldMismatchError(ValueError):
    pass


class UnsupportedDivisionError(ArithmeticError):
    """Division by a scalar that is not a monomial c * a^k."""


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # den must be monic; coefficient lists are low-to-high
    num = list(num)
    dq = len(den) - 1
    if len(num) - 1 < dq:
        return [0], num
    quot = [0] * (len(num) - dq)
    for k in range(len(num) - 1, dq - 1, -1):
        c = num[k]
        if c:
            quot[k - dq] = c
            for t in range(dq + 1):
                num[k - dq + t] -= c * den[t]
    rem = num[:dq] or [0]
    return quot, rem


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients (low to high) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ParameterError("cyclotomic index must be positive")
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    return tuple(poly)


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """The cyclotomic field Q(q) with q a primitive 2N-th root of unity."""

    n: int
    phi: int
    modulus: tuple[int, ...]
    # power_table[k] = coordinates of q^k, 0 <= k < 2N
    power_table: tuple[tuple[int, ...], ...] = field(repr=False)

    def __reduce__(self):
        return (field_spec, (self.n,))

    # -- constructors -------------------------------------------------
    def zero(self) -> "CycScalar":
        return CycScalar(self, {})

    def one(self) -> "CycScalar":
        return self.rational(1)

    def rational(self, num: int | Fraction, den: int = 1) -> "CycScalar":
        frac = Fraction(num) / den
        if frac == 0:
            return self.zero()
        nums = (frac.numerator,) + (0,) * (self.phi - 1)
        return CycScalar(self, {0: (nums, frac.denominator)})

    def q(self, k: int = 1) -> "CycScalar":
        """The scalar q^k."""
        return CycScalar(self, {0: (self.power_table[k % (2 * self.n)], 1)})

    def a(self, k: int = 1) -> "CycScalar":
        """The formal unit a raised to k."""
        return CycScalar(self, {k: (self.power_table[0], 1)})

    def qnum(self) -> complex:
        return cmath.exp(1j * math.pi / self.n)


@functools.lru_cache(maxsize=None)
def field_spec(n: int) -> FieldSpec:
    """Field data for q = exp(i*pi/n); n must be odd and at least 3."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 3 or n % 2 == 0:
        raise ParameterError("N must be odd and >= 3")
    modulus = cyclotomic_polynomial(2 * n)
    phi = len(modulus) - 1
    table = []
    for k in range(2 * n):
        mono = [0] * k + [1]
        _, rem = _poly_divmod_int(mono, list(modulus))
        rem = rem + [0] * (phi - len(rem))
        table.append(tuple(rem))
    return FieldSpec(n=n, phi=phi, modulus=modulus, power_table=tuple(table))


# ---------------------------------------------------------------------
# field-element kernels on (nums, den) pairs

def _normalize(nums: list[int], den: int) -> tuple[tuple[int, ...], int] | None:
    if not any(nums):
        return None
    if den < 0:
        nums = [-c for c in nums]
        den = -den
    g = math.gcd(den, *nums)
    if g != 1:
        nums = [c // g for c in nums]
        den //= g
    return tuple(nums), den


def _fadd(x, y, sign: int = 1):
    xn, xd = x
    yn, yd = y
    if xd == yd:
        out = [a + sign * b for a, b in zip(xn, yn)]
        return _normalize(out, xd)
    out = [a * yd + sign * b * xd for a, b in zip(xn, yn)]
    return _normalize(out, xd * yd)


def _fmul(spec: FieldSpec, x, y):
    xn, xd = x
    yn, yd = y
    phi = spec.phi
    prod = [0] * (2 * phi - 1)
    for i, c in enumerate(xn):
        if c:
            for j, d in enumerate(yn):
                if d:
                    prod[i + j] += c * d
    out = prod[:phi]
    table = spec.power_table
    for m in range(phi, 2 * phi - 1):
        c = prod[m]
        if c:
            for t, r in enumerate(table[m]):
                if r:
                    out[t] += c * r
    return _normalize(out, xd * yd)


def _finv(spec: FieldSpec, x):
    """Inverse in Q[x]/Phi via the extended Euclidean algorithm over Q."""
    nums, den = x
    # Work with Fraction polynomials, low to high.
    def trim(p):
        while len(p) > 1 and p[-1] == 0:
            p.pop()
        return p

    def divmod_poly(a, b):
        a = list(a)
        q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
        while len(a) >= len(b) and any(a):
            c = a[-1] / b[-1]
            k = len(a) - len(b)
            q[k] = c
            for t, bt in enumerate(b):
                a[k + t] -= c * bt
            a.pop()
            trim(a)
            if len(a) < len(b):
                break
        return q, trim(a or [Fraction(0)])

    def sub(a, b):
        n = max(len(a), len(b))
        a = a + [Fraction(0)] * (n - len(a))
        b = b + [Fraction(0)] * (n - len(b))
        return trim([s - t for s, t in zip(a, b)])

    def mul(a, b):
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, s in enumerate(a):
            for j, t in enumerate(b):
                out[i + j] += s * t
        return trim(out)

    r0 = [Fraction(c) for c in spec.modulus]
    r1 = trim([Fraction(c) for c in nums])
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while any(r1):
        quot, rem = divmod_poly(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, sub(s0, mul(quot, s1))
    # r0 is a nonzero constant because Phi is irreducible
    assert len(r0) == 1 and r0[0] != 0
    inv = [c / r0[0] * den for c in s0]
    inv = inv + [Fraction(0)] * (spec.phi - len(inv))
    common = 1
    for c in inv:
        common = common * c.denominator // math.gcd(common, c.denominator)
    return _normalize([int(c * common) for c in inv[: spec.phi]], common)


def _check_field(x: FieldSpec, y: FieldSpec) -> None:
    if x is not y:
        raise FieldMismatchError(f"cannot mix scalars over N={x.n} and N={y.n}")


Scalarish = Union["CycScalar", int, Fraction]


class CycScalar:
    """An element of Q(q)[a, 1/a]; immutable."""

    __slots__ = ("field", "terms", "_hash")

    def __init__(self, spec: FieldSpec, terms: dict):
        self.field = spec
        self.terms = terms  # a-exponent -> (nums, den); zero terms absent
        self._hash = None

    # -- coercion -----------------------------------------------------
    def _coerce(self, other: Scalarish) -> "CycScalar":
        if isinstance(other, CycScalar):
            _check_field(self.field, other.field)
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return NotImplemented

    # -- ring operations ----------------------------------------------
    def __add__(self, other: Scalarish) -> "CycScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        terms = dict(self.terms)
        for k, y in other.terms.items():
            x = terms.get(k)
            if x is None:
                terms[k] = y
            else:
                s = _fadd(x, y)
                if s is None:
                    del terms[k]
                else:
                    terms[k] = s
        return CycScalar(self.field, terms)

    __radd__ = __add__

    def __neg__(self) -> "CycScalar":
        return CycScalar(self.field, {k: (tuple(-c for c in n), d) for k, (n, d) in self.terms.items()})

    def __sub__(self, other: Scalarish) -> "CycScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other: Scalarish) -> "CycScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other: Scalarish) -> "CycScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return self.field.zero()
        spec = self.field
        if len(self.terms) == 1 and len(other.terms) == 1:
            (k, x), = self.terms.items()
            (l, y), = other.terms.items()
            return CycScalar(spec, {k + l: _fmul(spec, x, y)})
        terms: dict = {}
        for k, x in self.terms.items():
            for l, y in other.terms.items():
                p = _fmul(spec, x, y)
                e = k + l
                cur = terms.get(e)
                if cur is None:
                    terms[e] = p
                else:
                    s = _fadd(cur, p)
                    if s is None:
                        del terms[e]
                    else:
                        terms[e] = s
        return CycScalar(spec, terms)

    __rmul__ = __mul__

    def invert(self) -> "CycScalar":
        """Inverse of a monomial c * a^k with c a nonzero field element."""
        if not self.terms:
            raise ZeroDivisionError("inverse of zero")
        if len(self.terms) > 1:
            raise UnsupportedDivisionError("only monomials c*a^k are invertible here")
        (k, x), = self.terms.items()
        return CycScalar(self.field, {-k: _finv(self.field, x)})

    def __truediv__(self, other: Scalarish) -> "CycScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.invert()

    def __rtruediv__(self, other: Scalarish) -> "CycScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.invert()

    def __pow__(self, e: int) -> "CycScalar":
        if e < 0:
            return self.invert() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparison ---------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.field.rational(other)
        if not isinstance(other, CycScalar):
            return NotImplemented
        _check_field(self.field, other.field)
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field.n, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- structure ----------------------------------------------------
    def a_degrees(self) -> set[int]:
        return set(self.terms)

    def is_a_free(self) -> bool:
        """True when the only a-exponent present is 0 (or the scalar is zero)."""
        return set(self.terms) <= {0}

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def coefficient(self, k: int = 0) -> "CycScalar":
        """The field coefficient of a^k, as an a-free scalar."""
        x = self.terms.get(k)
        return CycScalar(self.field, {} if x is None else {0: x})

    def subs_a(self, value: "CycScalar") -> "CycScalar":
        """Substitute a := value (value must be a unit when negative powers occur)."""
        total = self.field.zero()
        for k, x in self.terms.items():
            total = total + CycScalar(self.field, {0: x}) * value ** k
        return total

    def field_coords(self, k: int = 0) -> tuple[Fraction, ...]:
        x = self.terms.get(k)
        if x is None:
            return (Fraction(0),) * self.field.phi
        nums, den = x
        return tuple(Fraction(c, den) for c in nums)

    def iter_terms(self) -> Iterator[tuple[int, tuple[Fraction, ...]]]:
        for k in sorted(self.terms):
            yield k, self.field_coords(k)

    # -- numerics and serialization ----------------------------------
    def to_complex(self, a_value: complex = 1.0) -> complex:
        qv = self.field.qnum()
        total = 0j
        for k, (nums, den) in self.terms.items():
            c = sum(n * qv ** j for j, n in enumerate(nums)) / den
            total += c * complex(a_value) ** k
        return total

    def to_json(self) -> dict:
        return {
            "a_terms": {
                str(k): [f"{c.numerator}/{c.denominator}" for c in coords]
                for k, coords in self.iter_terms()
            }
        }

    @classmethod
    def from_json(cls, spec: FieldSpec, data: dict) -> "CycScalar":
        result = spec.zero()
        for k, coords in data["a_terms"].items():
            if len(coords) != spec.phi:
                raise ValueError(f"expected {spec.phi} coordinates, got {len(coords)}")
            fr = [Fraction(c) for c in coords]
            common = math.lcm(*(c.denominator for c in fr))
            x = _normalize([int(c * common) for c in fr], common)
            if x is not None:
                result = result + CycScalar(spec, {int(k): x})
        return result

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, coords in self.iter_terms():
            poly = _format_field(coords)
            if k == 0:
                parts.append(poly)
            else:
                apow = "a" if k == 1 else f"a^{k}"
                parts.append(apow if poly == "1" else f"({poly})*{apow}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"CycScalar(N={self.field.n}, {self})"


def _format_field(coords) -> str:
    pieces = []
    for j, c in enumerate(coords):
        if c == 0:
            continue
        mono = "" if j == 0 else ("q" if j == 1 else f"q^{j}")
        if mono and abs(c) == 1:
            body = mono
        elif mono:
            body = f"{abs(c)}*{mono}"
        else:
            body = str(abs(c))
        sign = "-" if c < 0 else "+"
        pieces.append((sign, body))
    text = ""
    for idx, (sign, body) in enumerate(pieces):
        if idx == 0:
            text = ("-" if sign == "-" else "") + body
        else:
            text += f" {sign} {body}"
    return text or "0"


def as_scalar(spec: FieldSpec, value: Scalarish) -> CycScalar:
    if isinstance(value, CycScalar):
        _check_field(spec, value.field)
        return value
    return spec.rational(value)
