"""Subset lattice of a finite ground set and exact rank vectors.

Subsets are plain ``int`` bitmasks (bit ``i`` set iff element ``i`` is in
the subset).  A :class:`RankVector` stores one exact rational per subset as
an integer numerator array over a single positive common denominator, so the
value at mask ``A`` is ``numerators[A] / denominator``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError, SizeLimitError

MAX_ELEMENTS = 24
# |numerator| bound below which int64 stays exact through 10-term sums
_INT64_SAFE = 1 << 58


@dataclass(frozen=True)
class GroundSet:
    n: int
    labels: tuple | None = None

    def __post_init__(self):
        if self.n < 1:
            raise InputError(f"ground set needs at least one element, got {self.n}")
        if self.n > MAX_ELEMENTS:
            raise SizeLimitError(f"ground set size {self.n} exceeds {MAX_ELEMENTS}")
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != self.n or len(set(labels)) != self.n:
                raise InputError("labels must be distinct and number exactly n")
            object.__setattr__(self, "labels", labels)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def size(self) -> int:
        return 1 << self.n

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"x{i + 1}"

    def mask(self, names: Iterable) -> int:
        """Bitmask of the named (or integer-indexed) elements."""
        out = 0
        for x in names:
            if isinstance(x, (int, np.integer)):
                i = int(x)
            elif self.labels and x in self.labels:
                i = self.labels.index(x)
            else:
                raise InputError(f"unknown element {x!r}")
            if not 0 <= i < self.n:
                raise InputError(f"element index {i} out of range")
            out |= 1 << i
        return out

    def describe(self, A: int) -> str:
        names = [self.label(i) for i in range(self.n) if A >> i & 1]
        return "{" + ",".join(names) + "}"

    def check(self, A: int) -> int:
        A = int(A)
        if not 0 <= A < self.size:
            raise InputError(f"mask {A:#x} out of range for n={self.n}")
        return A


def popcounts(n: int) -> np.ndarray:
    """Cardinality of every subset of an n-element set, indexed by mask."""
    c = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        c[1 << i : 2 << i] = c[: 1 << i] + 1
    return c


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise InputError("floating point rank values are not accepted; use Fraction or int")
    return Fraction(x)


class RankVector:
    """Exact rank function ``h: 2^X -> Q`` stored densely by mask."""

    __slots__ = ("ground", "_num", "_den")

    def __init__(self, ground: GroundSet, numerators, denominator: int = 1):
        den = int(denominator)
        if den <= 0:
            raise InputError("denominator must be positive")
        num = np.asarray(numerators)
        if num.shape != (ground.size,):
            raise InputError(f"expected {ground.size} entries, got {num.shape}")
        if num.dtype != object and not np.issubdtype(num.dtype, np.integer):
            raise InputError("numerators must be integers")
        num = _normalize_dtype(num)
        g = _array_gcd(num, den)
        if g > 1:
            num = num // g
            den //= g
        num = np.array(num, copy=True)
        num.setflags(write=False)
        self.ground = ground
        self._num = num
        self._den = den

    # -- constructors

    @classmethod
    def from_values(cls, values: Sequence, n: int | None = None, labels=None) -> "RankVector":
        fracs = [_as_fraction(v) for v in values]
        if n is None:
            n = max(len(fracs).bit_length() - 1, 0)
        ground = GroundSet(n, tuple(labels) if labels else None)
        if len(fracs) != ground.size:
            raise InputError(f"expected {ground.size} values, got {len(fracs)}")
        den = 1
        for f in fracs:
            den = den * f.denominator // math.gcd(den, f.denominator)
        num = np.array([f.numerator * (den // f.denominator) for f in fracs], dtype=object)
        return cls(ground, num, den)

    @classmethod
    def from_function(cls, n: int, fn, labels=None) -> "RankVector":
        return cls.from_values([fn(A) for A in range(1 << n)], n, labels)

    @classmethod
    def zeros(cls, ground: GroundSet) -> "RankVector":
        return cls(ground, np.zeros(ground.size, dtype=np.int64))

    # -- access

    @property
    def n(self) -> int:
        return self.ground.n

    @property
    def numerators(self) -> np.ndarray:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    @property
    def is_integral(self) -> bool:
        return self._den == 1

    @property
    def full(self) -> Fraction:
        return self[self.ground.full]

    def __getitem__(self, A: int) -> Fraction:
        return Fraction(int(self._num[self.ground.check(A)]), self._den)

    def __len__(self):
        return self.ground.size

    def values(self) -> list:
        return [Fraction(int(v), self._den) for v in self._num]

    def __eq__(self, other):
        return (
            isinstance(other, RankVector)
            and self.n == other.n
            and self._den == other._den
            and np.array_equal(self._num, other._num)
        )

    def __hash__(self):
        return hash((self.n, self._den, tuple(int(v) for v in self._num)))

    def __repr__(self):
        head = ", ".join(str(v) for v in self.values()[:8])
        more = ", ..." if len(self) > 8 else ""
        return f"RankVector(n={self.n}, [{head}{more}])"

    def with_labels(self, labels) -> "RankVector":
        return RankVector(GroundSet(self.n, tuple(labels) if labels else None), self._num, self._den)

    def over(self, den: int) -> np.ndarray:
        """Numerators re-expressed over the common denominator ``den``."""
        if den % self._den:
            raise InputError(f"{den} is not a multiple of {self._den}")
        return self._num * (den // self._den)


def _normalize_dtype(num: np.ndarray) -> np.ndarray:
    if num.size == 0:
        return num.astype(np.int64)
    lo, hi = int(num.min()), int(num.max())
    if max(abs(lo), abs(hi)) < _INT64_SAFE:
        return num.astype(np.int64)
    return num.astype(object)


def _array_gcd(num: np.ndarray, den: int) -> int:
    if den == 1:
        return 1
    if num.dtype == object:
        g = den
        for v in num:
            g = math.gcd(g, int(v))
            if g == 1:
                break
        return g
    return int(np.gcd.reduce(np.append(np.abs(num), den)))


def common_denominator(*vectors: RankVector) -> int:
    den = 1
    for h in vectors:
        den = den * h.denominator // math.gcd(den, h.denominator)
    return den


def rank(h: RankVector, A: int) -> Fraction:
    return h[A]


def cond_entropy(h: RankVector, A: int, C: int = 0) -> Fraction:
    """``H(A | C) = h(A ∪ C) - h(C)``."""
    A, C = h.ground.check(A), h.ground.check(C)
    return h[A | C] - h[C]


def mutual_info(h: RankVector, A: int, B: int, C: int = 0) -> Fraction:
    """``I(A; B | C) = h(AC) + h(BC) - h(C) - h(ABC)``."""
    A, B, C = (h.ground.check(x) for x in (A, B, C))
    return h[A | C] + h[B | C] - h[C] - h[A | B | C]


def scale(h: RankVector, c) -> RankVector:
    c = _as_fraction(c)
    if c < 0:
        raise InputError("scale factor must be non-negative")
    num = h.numerators.astype(object) * c.numerator
    return RankVector(h.ground, num, h.denominator * c.denominator)


def union_table(V: Sequence[int], k: int | None = None) -> np.ndarray:
    """``out[alpha] = OR of V[i] for i in alpha`` for every mask of ``len(V)`` bits."""
    k = len(V) if k is None else k
    out = np.zeros(1 << k, dtype=np.int64)
    for i, v in enumerate(V):
        out[1 << i : 2 << i] = out[: 1 << i] | int(v)
    return out


def induce(h: RankVector, V: Sequence[int], labels=None) -> RankVector:
    """Rank function on ``len(V)`` elements: ``alpha -> h(union of V_i, i in alpha)``."""
    k = len(V)
    if k > MAX_ELEMENTS:
        raise SizeLimitError(f"cannot induce on {k} > {MAX_ELEMENTS} elements")
    if k == 0:
        raise InputError("need at least one subset")
    V = [h.ground.check(v) for v in V]
    idx = union_table(V)
    return RankVector(GroundSet(k, tuple(labels) if labels else None), h.numerators[idx], h.denominator)


def restrict(h: RankVector, elements: Sequence[int]) -> RankVector:
    """Restriction to the listed elements (in that order)."""
    labels = [h.ground.label(i) for i in elements] if h.ground.labels else None
    return induce(h, [1 << int(i) for i in elements], labels)


# -- "rankvec v1" text format ------------------------------------------------

def format_rankvec(h: RankVector) -> str:
    width = max(1, (h.n + 3) // 4)
    lines = [f"rankvec {h.n}"]
    for A, v in enumerate(h.numerators):
        f = Fraction(int(v), h.denominator)
        lines.append(f"{A:0{width}x} {f.numerator}/{f.denominator}")
    return "\n".join(lines) + "\n"


def parse_rankvec(text: str, labels=None) -> RankVector:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InputError("empty rankvec input")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "rankvec":
        raise InputError(f"bad rankvec header {lines[0]!r}")
    try:
        n = int(head[1])
    except ValueError:
        raise InputError(f"bad element count {head[1]!r}") from None
    ground = GroundSet(n, labels)
    values = [Fraction(0)] * ground.size
    seen = set()
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise InputError(f"bad rankvec line {ln!r}")
        try:
            A = int(parts[0], 16)
            v = Fraction(parts[1])
        except ValueError:
            raise InputError(f"bad rankvec line {ln!r}") from None
        ground.check(A)
        if A in seen:
            raise InputError(f"mask {A:x} listed twice")
        seen.add(A)
        values[A] = v
    return RankVector.from_values(values, n, labels)


def read_rankvec(path, labels=None) -> RankVector:
    with open(path) as fh:
        return parse_rankvec(fh.read(), labels)


def write_rankvec(h: RankVector, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_rankvec(h))
