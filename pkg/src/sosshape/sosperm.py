"""Sós permutations, their Farey intervals, and the three-gap step rule."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

import numpy as np

from .numeric import AlphaSpec, DomainError, ResourceError, parse_alpha

ENUMERATE_CAP = 3000

AlphaLike = Union[AlphaSpec, Fraction, str]


def as_alpha(alpha: AlphaLike) -> AlphaSpec:
    if isinstance(alpha, AlphaSpec):
        return alpha
    if isinstance(alpha, str):
        return parse_alpha(alpha)
    return AlphaSpec.rational(Fraction(alpha))


@dataclass(frozen=True)
class Permutation:
    """One-line notation over 1..n."""

    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if sorted(vals) != list(range(1, len(vals) + 1)):
            raise DomainError("not a permutation of 1..n")
        object.__setattr__(self, "values", vals)

    @classmethod
    def _trusted(cls, values: tuple[int, ...]) -> "Permutation":
        """Wrap a tuple of Python ints already known to be a permutation."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "values", values)
        return obj

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.values)
        for pos, v in enumerate(self.values, start=1):
            inv[v - 1] = pos
        return Permutation._trusted(tuple(inv))

    def __str__(self):
        return " ".join(map(str, self.values))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Space/comma separated values, or a compact digit string for n <= 9."""
        parts = text.replace(",", " ").split()
        if len(parts) == 1 and 1 < len(parts[0]) <= 9:
            parts = list(parts[0])
        return cls(tuple(int(p) for p in parts))


@dataclass(frozen=True)
class FareyInterval:
    """Consecutive order-``n`` Farey fractions ``a/b < c/d``."""

    a: int
    b: int
    c: int
    d: int
    order: int
    endpoint: bool = False

    def __post_init__(self):
        if self.b * self.c - self.a * self.d != 1:
            raise DomainError(f"{self} is not a pair of Farey neighbours")
        if max(self.b, self.d) > self.order:
            raise DomainError(f"{self} has a denominator above order {self.order}")

    @property
    def left(self) -> Fraction:
        return Fraction(self.a, self.b)

    @property
    def right(self) -> Fraction:
        return Fraction(self.c, self.d)

    @property
    def width(self) -> Fraction:
        return Fraction(1, self.b * self.d)

    def mediant(self) -> Fraction:
        return Fraction(self.a + self.c, self.b + self.d)

    def __str__(self):
        return f"{self.a}/{self.b},{self.c}/{self.d}"


# ---------------------------------------------------------------------------
# generation


def _sorting_permutation(a: int, N: int, n: int) -> tuple[int, ...]:
    """Stable sort of ``a*i mod N`` for i = 1..n, as one-line notation."""
    if N < 2 ** 62 // max(n, 1) and a < N:
        i = np.arange(1, n + 1, dtype=np.int64)
        keys = (a * i) % N
        order = np.argsort(keys, kind="stable") + 1
        return tuple(order.tolist())  # plain ints
    keys = [(a * i) % N for i in range(1, n + 1)]
    return tuple(sorted(range(1, n + 1), key=keys.__getitem__))


def sos_permutation(n: int, alpha: AlphaLike) -> Permutation:
    """The sorting permutation of the fractional parts of alpha*i, i = 1..n.

    Ties (only possible for a rational alpha with denominator <= n) are
    broken by index, i.e. the lexicographically first sorting permutation.
    """
    n = int(n)
    if n < 1:
        raise DomainError("n must be positive")
    alpha = as_alpha(alpha)
    if alpha.is_rational:
        r = alpha.value
    else:
        _, r = alpha.proxy(n)
    return Permutation._trusted(_sorting_permutation(r.numerator, r.denominator, n))


def _right_neighbour(a: int, b: int, n: int) -> tuple[int, int]:
    """Successor of ``a/b`` in the Farey sequence of order ``n``."""
    if b == 1 and a == 0:
        return 1, n
    inv = pow(a, -1, b)
    r = (-inv) % b
    d = r + ((n - r) // b) * b
    return (1 + a * d) // b, d


def farey_interval(n: int, alpha: AlphaLike) -> FareyInterval:
    """The order-``n`` Farey interval ``a/b <= alpha < c/d``.

    Uses a Stern-Brocot descent that takes whole runs of same-direction
    moves at once, so huge partial quotients cost nothing.  If alpha itself
    has denominator <= n, it becomes the left endpoint and ``endpoint`` is set.
    """
    n = int(n)
    if n < 1:
        raise DomainError("n must be positive")
    alpha = as_alpha(alpha)
    if alpha.is_rational and alpha.value.denominator <= n:
        a, b = alpha.value.numerator, alpha.value.denominator
        c, d = _right_neighbour(a, b, n)
        return FareyInterval(a, b, c, d, n, endpoint=True)
    x = alpha.value if alpha.is_rational else alpha.proxy(n)[1]
    a, b, c, d = 0, 1, 1, 1
    while b + d <= n:
        if x * (b + d) > a + c:
            # move left endpoint towards x: (a + k c)/(b + k d) < x
            k = math.ceil((x * b - a) / (c - x * d)) - 1
            k = min(k, (n - b) // d)
            a, b = a + k * c, b + k * d
        else:
            k = math.ceil((c - x * d) / (x * b - a)) - 1
            k = min(k, (n - d) // b)
            c, d = c + k * a, d + k * b
    return FareyInterval(a, b, c, d, n)


def stern_brocot_interval(n: int, x: Fraction) -> tuple[Fraction, Fraction]:
    """Plain one-step-at-a-time descent; slow reference for tests."""
    lo, hi = (0, 1), (1, 1)
    while True:
        m = (lo[0] + hi[0], lo[1] + hi[1])
        if m[1] > n:
            return Fraction(*lo), Fraction(*hi)
        if x >= Fraction(*m):
            lo = m
        else:
            hi = m


# ---------------------------------------------------------------------------
# three-gap rule


@dataclass(frozen=True)
class ThreeGapReport:
    ok: bool
    position: Optional[int] = None  # 1-based i where the rule first fails
    expected: Optional[int] = None
    found: Optional[int] = None

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok"
        if self.position == 1:
            return f"w(1) = {self.found}, expected {self.expected}"
        return (f"step w({self.position + 1}) - w({self.position}) = {self.found}, "
                f"expected {self.expected}")


def three_gap_step(value: int, n: int, b: int, d: int) -> int:
    if value <= n - b:
        return b
    if value < d:
        return b - d
    return -d


def check_three_gap(w: Union[Permutation, Sequence[int]], iv: FareyInterval) -> ThreeGapReport:
    """Check that ``w`` follows the step rule determined by ``iv``'s denominators."""
    vals = tuple(w)
    n = len(vals)
    if n != iv.order:
        raise DomainError(f"permutation length {n} != interval order {iv.order}")
    b, d = iv.b, iv.d
    if vals[0] != b:
        return ThreeGapReport(False, 1, b, vals[0])
    arr = np.asarray(vals, dtype=np.int64)
    head = arr[:-1]
    want = np.where(head <= n - b, b, np.where(head < d, b - d, -d))
    bad = np.flatnonzero(np.diff(arr) != want)
    if bad.size == 0:
        return ThreeGapReport(True)
    i = int(bad[0])
    return ThreeGapReport(False, i + 1, int(want[i]), int(arr[i + 1] - arr[i]))


def three_gap_permutation(iv: FareyInterval) -> Permutation:
    """Build the permutation of an interval directly from the step rule."""
    n, b, d = iv.order, iv.b, iv.d
    vals = [b]
    for _ in range(n - 1):
        vals.append(vals[-1] + three_gap_step(vals[-1], n, b, d))
    return Permutation(tuple(vals))


# ---------------------------------------------------------------------------
# enumeration


def farey_neighbours(n: int) -> Iterator[FareyInterval]:
    """All consecutive pairs of the Farey sequence of order ``n``, left to right."""
    a, b, c, d = 0, 1, 1, n
    while True:
        yield FareyInterval(a, b, c, d, n)
        if c == 1 and d == 1:
            return
        k = (n + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b


def totient_sum(n: int) -> int:
    phi = list(range(n + 1))
    for p in range(2, n + 1):
        if phi[p] == p:
            for m in range(p, n + 1, p):
                phi[m] -= phi[m] // p
    return sum(phi[1:])


def iter_sos(n: int, cap: int = ENUMERATE_CAP) -> Iterator[tuple[FareyInterval, Permutation]]:
    """Lazily yield ``(interval, permutation)`` for every order-``n`` interval."""
    if n < 1:
        raise DomainError("n must be positive")
    if n > cap:
        raise ResourceError(f"enumeration of order {n} exceeds the cap of {cap}")
    for iv in farey_neighbours(n):
        m = iv.mediant()
        yield iv, Permutation._trusted(_sorting_permutation(m.numerator, m.denominator, n))


def enumerate_sos(n: int, cap: int = ENUMERATE_CAP) -> list[tuple[FareyInterval, Permutation]]:
    """Every Sós permutation of length ``n`` paired with its Farey interval."""
    return list(iter_sos(n, cap))
