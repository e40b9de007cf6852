"""Exact continued-fraction machinery.

Everything here works on :class:`fractions.Fraction` and Python integers; the
only floating point in the package lives in the output layers.  An irrational
``alpha`` is never materialised as a float: it is described by its stream of
continued-fraction coefficients and every downstream computation runs on a
rational proxy convergent ``p_m/q_m`` that is exposed explicitly.
"""
from __future__ import annotations

import itertools
import math
import re
import threading
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Context, Decimal
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Iterator, Optional, Sequence

ExactRational = Fraction

#: extra convergent blocks used when an irrational delta has to be reported
PROXY_EXTRA_BLOCKS = 8


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class ResourceError(RuntimeError):
    """Input exceeds a configured size guard."""


# ---------------------------------------------------------------------------
# coefficient streams


class CoefficientStream:
    """Memoized, possibly finite, sequence of coefficients a0, a1, ...

    The underlying iterator is consumed lazily and at most once; repeated
    requests are served from the cache, so deepening a table is incremental.
    """

    def __init__(self, source: Iterable[int], label: str = "stream"):
        self._it: Iterator[int] = iter(source)
        self._cache: list[int] = []
        self._done = False
        self._lock = threading.Lock()
        self.label = label

    def get(self, i: int) -> Optional[int]:
        """Coefficient ``a_i``, or ``None`` once a finite stream is exhausted."""
        if i < 0:
            raise IndexError(i)
        if i >= len(self._cache) and not self._done:
            with self._lock:
                while len(self._cache) <= i and not self._done:
                    try:
                        a = int(next(self._it))
                    except StopIteration:
                        self._done = True
                        break
                    if len(self._cache) >= 1 and a <= 0:
                        raise DomainError(
                            f"coefficient a_{len(self._cache)} = {a} must be a positive integer")
                    self._cache.append(a)
        return self._cache[i] if i < len(self._cache) else None

    def __getitem__(self, i: int) -> int:
        a = self.get(i)
        if a is None:
            raise IndexError(f"{self.label} has no coefficient a_{i}")
        return a

    def take(self, depth: int) -> list[int]:
        out = []
        for i in range(depth):
            a = self.get(i)
            if a is None:
                break
            out.append(a)
        return out

    def __repr__(self):
        return f"CoefficientStream({self.label!r})"


def _e_coefficients() -> Iterator[int]:
    yield 2
    k = 1
    while True:
        yield 1
        yield 2 * k
        yield 1
        k += 1


def e_stream() -> CoefficientStream:
    """The expansion e = [2; 1, 2, 1, 1, 4, 1, 1, 6, ...]."""
    return CoefficientStream(_e_coefficients(), label="e")


def list_stream(coeffs: Sequence[int], period: int = 0) -> CoefficientStream:
    """Finite list; the last ``period`` entries repeat forever when period > 0."""
    coeffs = [int(c) for c in coeffs]
    if period < 0 or period > max(len(coeffs) - 1, 0):
        raise DomainError("periodic tail must be shorter than the coefficient list")

    def gen():
        yield from coeffs
        if period:
            yield from itertools.cycle(coeffs[-period:])

    return CoefficientStream(gen(), label=f"cf{coeffs}" + (f"~{period}" if period else ""))


def rational_coefficients(num: int, den: int) -> Iterator[int]:
    if den <= 0:
        raise DomainError("denominator must be positive")
    while den:
        q, r = divmod(num, den)
        yield q
        num, den = den, r


def _surd_coefficients(p: int, q: int, d: int) -> Iterator[int]:
    # x = (p + sqrt(d)) / q; keep q | d - p^2 so the recurrence stays integral
    if (d - p * p) % q:
        p, d, q = p * abs(q), d * q * q, q * abs(q)
    s = math.isqrt(d)
    while True:
        if q > 0:
            a = (p + s) // q
        else:
            a = -((p + s) // -q) - 1
        yield a
        p = a * q - p
        q = (d - p * p) // q


def surd_stream(p: int, q: int, d: int) -> CoefficientStream:
    _check_surd(p, q, d)
    return CoefficientStream(_surd_coefficients(p, q, d), label=f"surd({p},{q},{d})")


def _check_surd(p: int, q: int, d: int) -> None:
    if q == 0:
        raise DomainError("surd denominator must be nonzero")
    if d <= 0 or math.isqrt(d) ** 2 == d:
        raise DomainError(f"sqrt({d}) is not irrational")


# ---------------------------------------------------------------------------
# alpha


def _stream_mod1(stream: CoefficientStream) -> CoefficientStream:
    def gen():
        yield 0
        i = 1
        while True:
            a = stream.get(i)
            if a is None:
                return
            yield a
            i += 1

    return CoefficientStream(gen(), label=f"{stream.label} mod 1")


@dataclass(frozen=True, eq=False)
class AlphaSpec:
    """A number in (0, 1): exact rational, coefficient stream, or quadratic surd.

    Use the constructors :meth:`rational`, :meth:`from_stream`, :meth:`surd` or
    :func:`parse_alpha`.  ``coefficients`` always starts with ``a0 = 0``.
    """

    kind: str
    text: str
    coefficients: CoefficientStream = field(repr=False)
    value: Optional[Fraction] = None
    surd_pqd: Optional[tuple[int, int, int]] = None
    _conv: list = field(default_factory=list, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    # -- constructors -------------------------------------------------------
    @classmethod
    def rational(cls, value, text: Optional[str] = None) -> "AlphaSpec":
        value = Fraction(value)
        value -= math.floor(value)
        if value == 0:
            raise DomainError("alpha must lie in (0,1) after reduction mod 1")
        stream = CoefficientStream(rational_coefficients(value.numerator, value.denominator),
                                   label=str(value))
        return cls("rational", text or f"{value.numerator}/{value.denominator}", stream, value=value)

    @classmethod
    def from_stream(cls, stream: CoefficientStream, text: Optional[str] = None) -> "AlphaSpec":
        """Fractional part of the number whose expansion is ``stream``.

        A finite stream is converted to the equivalent rational.
        """
        if stream.get(0) is None:
            raise DomainError("empty coefficient stream")
        reduced = _stream_mod1(stream)
        if reduced.get(1) is None:
            raise DomainError("alpha must lie in (0,1) after reduction mod 1")
        # detect short finite streams eagerly (cheap), everything else stays lazy
        probe = stream.take(64)
        if len(probe) < 64 and stream.get(64) is None:
            p, q = _evaluate_cf([0] + probe[1:])
            return cls.rational(Fraction(p, q), text=text)
        return cls("stream", text or stream.label, reduced)

    @classmethod
    def surd(cls, p: int, q: int, d: int, text: Optional[str] = None) -> "AlphaSpec":
        """The fractional part of (p + sqrt(d)) / q."""
        _check_surd(p, q, d)
        if q < 0:
            raise DomainError("write the surd with a positive denominator")
        a0 = (p + math.isqrt(d)) // q
        p -= a0 * q
        return cls("surd", text or f"surd:({p}+sqrt({d}))/{q}", surd_stream(p, q, d),
                   surd_pqd=(p, q, d))

    # -- basic access -------------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return self.kind == "rational"

    def coefficient(self, i: int) -> Optional[int]:
        return self.coefficients.get(i)

    def convergent(self, i: int) -> Optional[tuple[int, int]]:
        """``(p_i, q_i)``, or ``None`` past the end of a rational expansion."""
        conv = self._conv
        if i < len(conv):
            return conv[i]
        with self._lock:
            while len(conv) <= i:
                k = len(conv)
                a = self.coefficients.get(k)
                if a is None:
                    return None
                p2, q2 = conv[k - 2] if k >= 2 else ((0, 1) if k == 0 else (1, 0))
                p1, q1 = conv[k - 1] if k >= 1 else (1, 0)
                conv.append((a * p1 + p2, a * q1 + q2))
        return conv[i]

    def convergent_fraction(self, i: int) -> Optional[Fraction]:
        c = self.convergent(i)
        return None if c is None else Fraction(*c)

    def last_index(self) -> Optional[int]:
        """Index of the final convergent for rationals, ``None`` otherwise."""
        if not self.is_rational:
            return None
        i = 0
        while self.coefficients.get(i + 1) is not None:
            i += 1
        return i

    # -- exact comparisons --------------------------------------------------
    def compare(self, r: Fraction) -> int:
        """Sign of ``alpha - r``, decided exactly.

        Irrational values are bracketed between consecutive convergents until
        ``r`` falls outside the bracket; this always terminates.
        """
        r = Fraction(r)
        if self.is_rational:
            return (self.value > r) - (self.value < r)
        k = 0
        while True:
            c0 = self.convergent_fraction(k)
            c1 = self.convergent_fraction(k + 1)
            if c1 is None:  # user stream ran out: alpha is c0 exactly
                return (c0 > r) - (c0 < r)
            lo, hi = min(c0, c1), max(c0, c1)
            if r < lo:
                return 1
            if r > hi:
                return -1
            k += 1

    def delta_at_most(self, i: int, bound: Fraction) -> bool:
        """Whether ``|alpha - p_i/q_i| <= bound``, exactly."""
        c = self.convergent_fraction(i)
        return self.compare(c - bound) >= 0 and self.compare(c + bound) <= 0

    def proxy(self, n: int, parity: Optional[int] = None,
              extra: int = 0) -> tuple[int, Fraction]:
        """A convergent ``(m, p_m/q_m)`` with ``q_m > n``.

        ``parity`` forces ``m % 2``; ``extra`` adds further blocks (kept even so
        the parity survives).  Rationals are their own proxy.
        """
        if self.is_rational:
            if self.value.denominator <= n:
                raise DomainError(f"rational alpha {self.value} has denominator <= n={n}")
            return self.last_index(), self.value
        m = 0
        while self.convergent(m)[1] <= n or (parity is not None and m % 2 != parity):
            m += 1
        m += extra + (extra % 2)
        return m, self.convergent_fraction(m)

    def approx(self, digits: int = 30) -> Decimal:
        """Decimal approximation (output only)."""
        if self.is_rational:
            return to_decimal(self.value, digits)
        m = 0
        while True:
            c = self.convergent(m + 1)
            if c is None or c[1] ** 2 > 10 ** (digits + 2):
                break
            m += 1
        return to_decimal(self.convergent_fraction(m + 1) or self.convergent_fraction(m), digits)

    def __str__(self):
        return self.text


def _evaluate_cf(coeffs: Sequence[int]) -> tuple[int, int]:
    p2, q2, p1, q1 = 0, 1, 1, 0
    for a in coeffs:
        p2, q2, p1, q1 = p1, q1, a * p1 + p2, a * q1 + q2
    return p1, q1


_CF_RE = re.compile(r"^cf:\[\s*(-?\d+)\s*(?:;\s*([\d\s,]*))?\]\s*(?:[:,;]?\s*periodic:(\d+))?$")
_SURD_RE = re.compile(r"^surd:\(\s*([+-]?\d+)\s*\+\s*sqrt\(\s*(\d+)\s*\)\s*\)\s*/\s*(\d+)$")
_RAT_RE = re.compile(r"^([+-]?\d+)\s*/\s*(\d+)$")

ALIASES = {
    "golden": "surd:(-1+sqrt(5))/2",
    "sqrt2": "surd:(0+sqrt(2))/1",
}


def parse_alpha(text: str) -> AlphaSpec:
    """Parse the textual alpha grammar.

    ``p/q`` | ``cf:[a0;a1,...]`` (optionally ``periodic:k``) | ``e`` |
    ``surd:(p+sqrt(d))/q``, plus the aliases ``golden`` and ``sqrt2``.
    """
    raw = text.strip()
    src = ALIASES.get(raw, raw)
    if src == "e":
        return AlphaSpec.from_stream(e_stream(), text="e")
    m = _RAT_RE.match(src)
    if m:
        num, den = int(m.group(1)), int(m.group(2))
        if den == 0:
            raise DomainError("zero denominator")
        return AlphaSpec.rational(Fraction(num, den), text=raw if raw != src else None)
    m = _CF_RE.match(src)
    if m:
        coeffs = [int(m.group(1))]
        if m.group(2):
            coeffs += [int(c) for c in m.group(2).replace(" ", "").split(",") if c]
        period = int(m.group(3) or 0)
        if any(c <= 0 for c in coeffs[1:]):
            raise DomainError("coefficients a_i, i >= 1, must be positive")
        if period:
            if period >= len(coeffs):
                raise DomainError("periodic tail must not include a0")
            return AlphaSpec.from_stream(list_stream(coeffs, period), text=raw)
        p, q = _evaluate_cf(coeffs)
        return AlphaSpec.rational(Fraction(p, q), text=raw)
    m = _SURD_RE.match(src)
    if m:
        p, d, q = int(m.group(1)), int(m.group(2)), int(m.group(3))
        if q == 0:
            raise DomainError("zero denominator")
        return AlphaSpec.surd(p, q, d, text=raw)
    raise DomainError(f"cannot parse alpha {text!r}")


# ---------------------------------------------------------------------------
# continued fractions and convergent tables


def cf_expand(alpha, depth: Optional[int] = None) -> list[int]:
    """Continued-fraction coefficients ``[a0, a1, ...]``.

    ``alpha`` is an :class:`AlphaSpec`, a raw :class:`CoefficientStream`, a
    :class:`~fractions.Fraction`, or a pair ``(a, b)`` standing for a/b with
    ``1 <= a < b`` and ``gcd(a, b) = 1``.  Rational input stops at
    termination; streams need ``depth``.
    """
    if isinstance(alpha, (Fraction, int)):
        alpha = AlphaSpec.rational(alpha)
    if isinstance(alpha, tuple):
        a, b = alpha
        _check_pair(a, b)
        coeffs = list(rational_coefficients(a, b))
        return coeffs if depth is None else coeffs[:depth]
    stream = alpha.coefficients if isinstance(alpha, AlphaSpec) else alpha
    if depth is None:
        if isinstance(alpha, AlphaSpec) and alpha.is_rational:
            return stream.take(alpha.last_index() + 1)
        raise DomainError("an infinite expansion needs an explicit depth")
    if depth < 0:
        raise DomainError("depth must be nonnegative")
    return stream.take(depth)


def _check_pair(a: int, b: int) -> None:
    if not (1 <= a < b):
        raise DomainError(f"need 1 <= a < b, got a={a}, b={b}")
    if math.gcd(a, b) != 1:
        raise DomainError(f"gcd({a}, {b}) != 1")


@dataclass(frozen=True)
class ConvergentRow:
    index: int
    a: int
    p: int
    q: int
    delta: Fraction
    side: int  # sign of alpha - p/q

    @property
    def beta(self) -> Optional[Fraction]:
        return None if self.delta == 0 else 1 / self.delta


@dataclass(frozen=True)
class IntermediateRow:
    i: int
    j: int
    p: int
    q: int
    delta: Fraction


@dataclass(frozen=True)
class ConvergentTable:
    """Principal convergents of alpha through some index.

    For irrational alpha the deltas are measured against ``proxy`` (a deep
    convergent) and ``approximate`` is set.
    """

    alpha: AlphaSpec
    rows: tuple[ConvergentRow, ...]
    terminated: bool
    proxy: Optional[Fraction]
    approximate: bool

    @property
    def coefficients(self) -> list[int]:
        return [r.a for r in self.rows]

    @property
    def q(self) -> list[int]:
        return [r.q for r in self.rows]

    @property
    def p(self) -> list[int]:
        return [r.p for r in self.rows]

    @property
    def delta(self) -> list[Fraction]:
        return [r.delta for r in self.rows]

    def __getitem__(self, i: int) -> ConvergentRow:
        return self.rows[i]

    def __len__(self):
        return len(self.rows)

    @cached_property
    def intermediates(self) -> tuple[IntermediateRow, ...]:
        """All ``(i, j, p_ij, q_ij, delta_ij)`` with ``1 <= j <= a_i``.

        Materialised on first access; this is as long as the sum of the
        coefficients, so avoid it for expansions with huge partial quotients.
        """
        target = self.alpha.value if self.alpha.is_rational else self.proxy
        out = []
        for i in range(1, len(self.rows)):
            p2, q2 = (self.rows[i - 2].p, self.rows[i - 2].q) if i >= 2 else (1, 0)
            p1, q1 = self.rows[i - 1].p, self.rows[i - 1].q
            for j in range(1, self.rows[i].a + 1):
                p, q = p2 + j * p1, q2 + j * q1
                out.append(IntermediateRow(i, j, p, q, abs(target - Fraction(p, q))))
        return tuple(out)


def q_exceeds(n: int) -> Callable[[AlphaSpec, int], bool]:
    return lambda alpha, i: alpha.convergent(i)[1] > n


def delta_at_most(bound) -> Callable[[AlphaSpec, int], bool]:
    bound = Fraction(bound)
    return lambda alpha, i: alpha.delta_at_most(i, bound)


def convergent_table(alpha: AlphaSpec, until: Optional[Callable[[AlphaSpec, int], bool]] = None,
                     depth: Optional[int] = None,
                     extra_blocks: int = PROXY_EXTRA_BLOCKS) -> ConvergentTable:
    """Convergent table through the first index where ``until`` holds.

    ``until(alpha, i)`` is a predicate such as :func:`q_exceeds` or
    :func:`delta_at_most`; alternatively ``depth`` fixes the number of rows.
    A rational expansion that ends first yields ``terminated=True``.
    """
    if until is None and depth is None:
        if not alpha.is_rational:
            raise DomainError("an irrational table needs a predicate or a depth")
        depth = alpha.last_index() + 1
    last = None
    terminated = False
    i = 0
    while True:
        if alpha.convergent(i) is None:
            terminated = True
            break
        last = i
        if depth is not None and i + 1 >= depth:
            break
        if until is not None and until(alpha, i):
            break
        i += 1
    if last is None:
        raise DomainError("empty expansion")
    if alpha.is_rational:
        target, approximate = alpha.value, False
        terminated = terminated or alpha.convergent(last + 1) is None
    else:
        target, approximate = alpha.convergent_fraction(last + extra_blocks), True
    rows = []
    for k in range(last + 1):
        p, q = alpha.convergent(k)
        diff = target - Fraction(p, q)
        rows.append(ConvergentRow(k, alpha.coefficient(k), p, q, abs(diff),
                                  (diff > 0) - (diff < 0)))
    return ConvergentTable(alpha, tuple(rows), terminated,
                           None if alpha.is_rational else target, approximate)


# ---------------------------------------------------------------------------
# slow Euclidean algorithm


@dataclass(frozen=True)
class EuclidRow:
    i: int
    j: int
    r: int
    s: int
    t: int


@dataclass(frozen=True)
class SlowEuclidTrace:
    a: int
    b: int
    rows: tuple[EuclidRow, ...]
    block_sizes: tuple[int, ...]
    simple_rows: tuple[int, ...]

    def table(self) -> list[tuple[int, int, Optional[int], int, int, int]]:
        """Rows as ``(i, j, a_i, r, s, t)``; ``a_i`` only on the last row of a block."""
        out = []
        for row in self.rows:
            a_i = None
            if row.i >= 1 and row.j == self.block_sizes[row.i - 1]:
                a_i = row.j
            out.append((row.i, row.j, a_i, row.r, row.s, row.t))
        return out


def iter_blocks(a: int, b: int) -> Iterator[tuple[int, int, tuple[int, int, int], tuple[int, int, int]]]:
    """Yield ``(i, a_i, prev2, prev1)`` for each block of the subtraction run.

    ``prev2``/``prev1`` are the simple ``(r, s, t)`` triples with indices
    ``i-2`` and ``i-1``; row ``(i, j)`` of the block is ``prev2 - j * prev1``.
    Nothing inside a block is materialised.
    """
    prev2, prev1 = (b, 1, 0), (a, 0, 1)
    i = 1
    while prev1[0] > 0:
        size = prev2[0] // prev1[0]
        yield i, size, prev2, prev1
        nxt = tuple(u - size * v for u, v in zip(prev2, prev1))
        prev2, prev1 = prev1, nxt
        i += 1


def slow_euclid(a: int, b: int) -> SlowEuclidTrace:
    """Subtraction-granular extended Euclid on ``(a, b)``; row ``r = s*b + t*a``."""
    _check_pair(a, b)
    rows = [EuclidRow(-1, 1, b, 1, 0), EuclidRow(0, 1, a, 0, 1)]
    sizes, simple = [], [0, 1]
    for i, size, prev2, prev1 in iter_blocks(a, b):
        for j in range(1, size + 1):
            rows.append(EuclidRow(i, j, prev2[0] - j * prev1[0], prev2[1] - j * prev1[1],
                                  prev2[2] - j * prev1[2]))
        sizes.append(size)
        simple.append(len(rows) - 1)
    return SlowEuclidTrace(a, b, tuple(rows), tuple(sizes), tuple(simple))


# ---------------------------------------------------------------------------
# output helpers


def to_decimal(x: Fraction, digits: int = 6) -> Decimal:
    """Round-to-nearest decimal with ``digits`` places after the point."""
    x = Fraction(x)
    ctx = Context(prec=max(28, digits + len(str(abs(x.numerator // x.denominator))) + 5),
                  rounding=ROUND_HALF_EVEN)
    q = Decimal(1).scaleb(-digits)
    return (ctx.divide(Decimal(x.numerator), Decimal(x.denominator))).quantize(q, context=ctx)


def decimal_sqrt(x: Fraction, digits: int = 12) -> Decimal:
    """Square root of a nonnegative rational to ``digits`` significant digits."""
    x = Fraction(x)
    if x < 0:
        raise DomainError("negative radicand")
    ctx = Context(prec=digits + 10)
    root = ctx.sqrt(ctx.divide(Decimal(x.numerator), Decimal(x.denominator)))
    return Context(prec=digits).plus(root)


def fmt(x: Fraction, digits: int = 6) -> str:
    return str(to_decimal(x, digits))
