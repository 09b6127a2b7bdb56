"""Finite fields GF(p^m) with integer-coded elements.

An element of GF(p^m) is a polynomial c0 + c1 x + ... + c_{m-1} x^{m-1}
over GF(p) reduced modulo a fixed monic irreducible.  Internally every
element is coded as the integer ``sum(c_i * p**i)``; the vectorised
methods on :class:`FieldSpec` accept and return such codes (scalars or
numpy arrays).  :class:`FieldElement` is the user-facing wrapper.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .errors import InputError, SizeLimitError, UnsupportedError

MAX_ORDER = 1 << 20


def is_prime(p: int) -> bool:
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


# -- polynomials over GF(p): coefficient lists, constant term first ---------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _psub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _pmod(a, f, p):
    a = _trim(a)
    f = _trim(f)
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df and a:
        shift = len(a) - 1 - df
        c = a[-1] * inv_lead % p
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        a = _trim(a)
    return a


def _pmulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pmod(out, f, p)


def _ppowmod(base, e, f, p):
    result = [1]
    base = _pmod(base, f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(poly, p: int) -> bool:
    """Ben-Or test: ``gcd(x^(p^k) - x, f) = 1`` for every ``k <= deg/2``."""
    f = _trim(poly)
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    xpow = [0, 1]
    for _ in range(m // 2):
        xpow = _ppowmod(xpow, p, f, p)
        g = _pgcd(_psub(xpow, [0, 1], p), f, p)
        if len(g) > 1:
            return False
    return True


# -- fields -----------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """GF(p^m) defined by a monic irreducible ``modulus`` (constant term first).

    For ``m == 1`` the modulus is ``x`` by convention and elements are the
    residues mod ``p``.
    """

    p: int
    m: int
    modulus: tuple

    @property
    def order(self) -> int:
        return self.p ** self.m

    @property
    def is_prime(self) -> bool:
        return self.m == 1

    @property
    def characteristic(self) -> int:
        return self.p

    def __str__(self):
        return f"GF({self.p})" if self.m == 1 else f"GF({self.p}^{self.m})"

    def __repr__(self):
        return f"FieldSpec({self})"

    # internal tables, built lazily

    @cached_property
    def _digits(self) -> np.ndarray:
        codes = np.arange(self.order, dtype=np.int64)
        return np.stack([(codes // self.p ** i) % self.p for i in range(self.m)], axis=1)

    @cached_property
    def _powers(self) -> np.ndarray:
        return np.array([self.p ** i for i in range(self.m)], dtype=np.int64)

    @cached_property
    def _exp_log(self):
        q = self.order
        f = list(self.modulus)
        for g in range(2, q):
            gpoly = self.coeffs(g)
            exp = np.zeros(q - 1, dtype=np.int64)
            cur = [1]
            ok = True
            for k in range(q - 1):
                code = self.encode(cur)
                if k > 0 and code == 1:
                    ok = False
                    break
                exp[k] = code
                cur = _pmulmod(cur, gpoly, f, self.p)
            if ok and self.encode(cur) == 1:
                log = np.zeros(q, dtype=np.int64)
                log[exp] = np.arange(q - 1, dtype=np.int64)
                return exp, log
        raise AssertionError(f"no primitive element found in {self}")

    def coeffs(self, code: int) -> list:
        code = int(code)
        out = []
        for _ in range(self.m):
            out.append(code % self.p)
            code //= self.p
        return out

    def encode(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.m:
            coeffs = _pmod(coeffs, self.modulus, self.p) if self.m > 1 else [sum(coeffs[:1]) % self.p]
        return sum((int(c) % self.p) * self.p ** i for i, c in enumerate(coeffs))

    # vectorised arithmetic on codes

    def add(self, a, b):
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        d = self._digits
        return ((d[a] + d[b]) % self.p) @ self._powers

    def neg(self, a):
        if self.m == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return ((-self._digits[a]) % self.p) @ self._powers

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.m == 1:
            return (a * b) % self.p
        exp, log = self._exp_log
        a = np.asarray(a)
        b = np.asarray(b)
        out = exp[(log[a] + log[b]) % (self.order - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a: int) -> int:
        a = int(a)
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        if self.m == 1:
            return pow(a, -1, self.p)
        exp, log = self._exp_log
        return int(exp[(-log[a]) % (self.order - 1)])

    def element(self, coeffs) -> "FieldElement":
        return FieldElement.from_code(self, self.encode(coeffs))

    def zero(self) -> "FieldElement":
        return FieldElement.from_code(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement.from_code(self, 1)

    def elements(self):
        return [FieldElement.from_code(self, c) for c in range(self.order)]


@lru_cache(maxsize=None)
def field_make(p: int, m: int = 1) -> FieldSpec:
    """Return GF(p^m) with the smallest monic irreducible modulus.

    Candidates ``x^m + c_{m-1} x^{m-1} + ... + c_0`` are ordered by the
    base-p number ``c_{m-1} ... c_0``; the first irreducible one wins.
    """
    p, m = int(p), int(m)
    if not (2 <= p < 2 ** 31) or not is_prime(p):
        raise InputError(f"field characteristic must be a prime below 2^31, got {p}")
    if m < 1:
        raise InputError(f"extension degree must be >= 1, got {m}")
    if m == 1:
        return FieldSpec(p, 1, (0, 1))
    if p ** m > MAX_ORDER:
        raise SizeLimitError(f"GF({p}^{m}) exceeds the supported order {MAX_ORDER}")
    for low in range(p ** m):
        cand = [(low // p ** i) % p for i in range(m)] + [1]
        if is_irreducible(cand, p):
            return FieldSpec(p, m, tuple(cand))
    raise AssertionError("unreachable: irreducible polynomials exist for every degree")


_LITERAL = re.compile(r"^\s*GF\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?\)\s*$", re.IGNORECASE)


def parse_field(text: str) -> FieldSpec:
    """Parse ``GF(p)``, ``GF(p^m)`` or a prime-power order such as ``GF(9)``."""
    mt = _LITERAL.match(text)
    if not mt:
        raise InputError(f"bad field literal {text!r}; expected GF(p) or GF(p^m)")
    base = int(mt.group(1))
    if mt.group(2) is not None:
        return field_make(base, int(mt.group(2)))
    if is_prime(base):
        return field_make(base, 1)
    for p in range(2, base + 1):
        if base % p == 0:
            m, rest = 0, base
            while rest % p == 0:
                rest //= p
                m += 1
            if rest == 1 and is_prime(p):
                return field_make(p, m)
            break
    raise InputError(f"{base} is not a prime power")


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.field.m:
            raise InputError(f"{self.field} elements need {self.field.m} coefficients")
        if any(not 0 <= c < self.field.p for c in self.coeffs):
            raise InputError(f"coefficients must lie in [0, {self.field.p})")

    @classmethod
    def from_code(cls, field: FieldSpec, code: int) -> "FieldElement":
        return cls(field, tuple(field.coeffs(code)))

    @property
    def code(self) -> int:
        return self.field.encode(self.coeffs)

    def _check(self, other):
        if not isinstance(other, FieldElement):
            raise InputError(f"expected a FieldElement, got {type(other).__name__}")
        if other.field != self.field:
            raise InputError(f"mixed fields {self.field} and {other.field}")

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, neg(other))

    def __mul__(self, other):
        return mul(self, other)

    def __truediv__(self, other):
        return mul(self, inv(other))

    def __neg__(self):
        return neg(self)

    def __bool__(self):
        return any(self.coeffs)

    def __str__(self):
        if self.field.m == 1:
            return str(self.coeffs[0])
        return "[" + ",".join(map(str, self.coeffs)) + "]"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    a._check(b)
    return FieldElement.from_code(a.field, int(a.field.add(a.code, b.code)))


def neg(a: FieldElement) -> FieldElement:
    return FieldElement.from_code(a.field, int(a.field.neg(a.code)))


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    a._check(b)
    return FieldElement.from_code(a.field, int(a.field.mul(a.code, b.code)))


def inv(a: FieldElement) -> FieldElement:
    return FieldElement.from_code(a.field, a.field.inv(a.code))


def embed(e: FieldElement, target: FieldSpec) -> FieldElement:
    """Image of an element of the prime field GF(p) inside GF(p^m)."""
    if not e.field.is_prime:
        raise UnsupportedError("only prime fields can be embedded")
    if target.p != e.field.p:
        raise InputError(f"characteristic mismatch: {e.field} into {target}")
    return FieldElement(target, (e.coeffs[0],) + (0,) * (target.m - 1))


def parse_element(text: str, field: FieldSpec) -> int:
    """Parse ``c`` or ``[c0,c1,...]`` into an element code of ``field``."""
    text = text.strip()
    if text.startswith("["):
        if not text.endswith("]"):
            raise InputError(f"bad element literal {text!r}")
        body = text[1:-1].strip()
        coeffs = [int(t) for t in body.split(",")] if body else []
        if len(coeffs) > field.m or any(not 0 <= c < field.p for c in coeffs):
            raise InputError(f"element {text!r} does not belong to {field}")
        return field.encode(coeffs)
    try:
        c = int(text)
    except ValueError:
        raise InputError(f"bad element literal {text!r}") from None
    if not 0 <= c < field.p:
        raise InputError(f"element {text!r} does not belong to {field}")
    return c


def format_element(code: int, field: FieldSpec) -> str:
    if field.m == 1:
        return str(int(code))
    return "[" + ",".join(map(str, field.coeffs(code))) + "]"
