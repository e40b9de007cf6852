"""The torus lattice L_{a,b} = {(i, a*i mod b)}: unit vectors, lengths, frames.

Vectors are written ``<h, v>``.  A vector is *increasing* when both entries are
nonnegative and *decreasing* when ``h >= 0 >= v``.  The unit vectors come
straight out of the slow Euclidean trace; long runs inside one subtraction
block are kept as arithmetic progressions, so nothing here is linear in the
size of a partial quotient.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, Optional, Sequence, Union

import numpy as np

from .numeric import DomainError, ResourceError, _check_pair, iter_blocks

ORACLE_GUARD = 500

Number = Union[int, Fraction]


@dataclass(frozen=True)
class LatticeVector:
    h: int
    v: Fraction

    def __post_init__(self):
        object.__setattr__(self, "v", Fraction(self.v))

    @classmethod
    def of(cls, pair) -> "LatticeVector":
        if isinstance(pair, LatticeVector):
            return pair
        return cls(int(pair[0]), Fraction(pair[1]))

    def __add__(self, o):
        return LatticeVector(self.h + o.h, self.v + o.v)

    def __sub__(self, o):
        return LatticeVector(self.h - o.h, self.v - o.v)

    def __neg__(self):
        return LatticeVector(-self.h, -self.v)

    def __mul__(self, k: int):
        return LatticeVector(self.h * k, self.v * k)

    __rmul__ = __mul__

    def __iter__(self):
        yield self.h
        yield self.v

    @property
    def slope(self) -> Optional[Fraction]:
        return None if self.h == 0 else self.v / self.h

    @property
    def is_increasing(self) -> bool:
        return self.h >= 0 and self.v >= 0

    @property
    def is_decreasing(self) -> bool:
        return self.h >= 0 and self.v <= 0

    def norm2(self, tau: Number = 1) -> Fraction:
        """Squared length after shrinking the vertical axis by ``tau``."""
        return self.h * self.h + (self.v / tau) ** 2

    def scale_vertical(self, factor: Number) -> "LatticeVector":
        return LatticeVector(self.h, self.v * factor)

    def as_tuple(self) -> tuple:
        return (self.h, self.v)

    def __str__(self):
        return f"<{self.h},{self.v}>"


def det(p, q) -> Number:
    """``p1*q2 - p2*q1``."""
    (p1, p2), (q1, q2) = p, q
    return p1 * q2 - p2 * q1


# ---------------------------------------------------------------------------
# fans of unit vectors


@dataclass(frozen=True)
class _Segment:
    base: tuple[int, int]
    step: tuple[int, int]
    count: int  # vectors base + j*step for j = 1..count


class Fan:
    """Ordered run of integer vectors stored as arithmetic segments."""

    def __init__(self, segments: Sequence[_Segment]):
        self.segments = tuple(s for s in segments if s.count > 0)
        self.offsets = []
        total = 0
        for s in self.segments:
            self.offsets.append(total)
            total += s.count
        self.length = total

    def __len__(self):
        return self.length

    def __getitem__(self, k: int) -> tuple[int, int]:
        if k < 0:
            k += self.length
        if not 0 <= k < self.length:
            raise IndexError(k)
        si = bisect.bisect_right(self.offsets, k) - 1
        s = self.segments[si]
        j = k - self.offsets[si] + 1
        return (s.base[0] + j * s.step[0], s.base[1] + j * s.step[1])

    def __iter__(self) -> Iterator[tuple[int, int]]:
        for s in self.segments:
            for j in range(1, s.count + 1):
                yield (s.base[0] + j * s.step[0], s.base[1] + j * s.step[1])

    def first_where(self, phi: Callable[[tuple], Number], strict: bool) -> Optional[int]:
        """First index ``k`` with ``phi(fan[k]) < 0`` (or ``<= 0``).

        ``phi`` must be linear, and its sign along the fan must change from
        positive to negative at most once.
        """
        for s, off in zip(self.segments, self.offsets):
            g0, g1 = phi(s.base), phi(s.step)
            hit = (lambda g: g < 0) if strict else (lambda g: g <= 0)
            if hit(g0 + g1):
                return off
            if g1 >= 0:
                continue
            bound = Fraction(-g0) / g1
            j = math.floor(bound) + 1 if strict else math.ceil(bound)
            j = max(j, 1)
            if j <= s.count:
                return off + j - 1
        return None


def _single(vec: tuple[int, int]) -> _Segment:
    return _Segment((0, 0), vec, 1)


@dataclass(frozen=True)
class UnitVectorFan:
    """Unit vectors of L_{a,b}.

    ``U`` (increasing, decreasing slope) and ``V`` (decreasing, increasing
    slope) exactly as produced by the slow Euclidean trace.  ``full_U`` and
    ``full_V`` add the axis vectors ``<0,b>``/``<b,0>`` and ``<0,-b>``/``<b,0>``
    at the ends; these also have lattice length one.
    """

    a: int
    b: int
    full_U: Fan
    full_V: Fan

    @property
    def U(self) -> list[tuple[int, int]]:
        return list(self.full_U)[1:-1]

    @property
    def V(self) -> list[tuple[int, int]]:
        return list(self.full_V)[1:-1]

    @property
    def d(self) -> int:
        return len(self.full_U) - 2

    @property
    def e(self) -> int:
        return len(self.full_V) - 2


@lru_cache(maxsize=256)
def _fan(a: int, b: int) -> UnitVectorFan:
    _check_pair(a, b)
    useg = [_single((0, b)), _single((1, a))]
    vseg = [_single((0, -b))]
    for i, size, prev2, prev1 in iter_blocks(a, b):
        r2, _, t2 = prev2
        r1, _, t1 = prev1
        last_r = r2 - size * r1
        count = size - 1 if last_r == 0 else size  # the r = 0 row is the <b,0> sentinel
        if t2 - t1 > 0:  # rows of this block have t > 0
            useg.append(_Segment((t2, r2), (-t1, -r1), count))
        else:
            vseg.append(_Segment((-t2, -r2), (t1, r1), count))
    useg.append(_single((b, 0)))
    vseg.append(_single((b, 0)))
    return UnitVectorFan(a, b, Fan(useg), Fan(vseg))


def unit_vectors(a: int, b: int) -> UnitVectorFan:
    """All unit lattice vectors of L_{a,b} (``gcd(a, b) = 1``, ``1 <= a < b``)."""
    return _fan(a, b)


# ---------------------------------------------------------------------------
# lattice length


def on_lattice(a: int, b: int, point) -> bool:
    x, y = point
    return (y - a * x) % b == 0


def _decompose(fan: Fan, w: tuple[int, int], increasing: bool) -> int:
    if w == (0, 0):
        return 0
    if increasing:
        phi = lambda u: w[0] * u[1] - w[1] * u[0]   # <= 0 once u is no steeper than w
    else:
        phi = lambda u: -(w[0] * u[1] - w[1] * u[0])
    k = fan.first_where(phi, strict=False)
    if k is None:
        raise DomainError(f"vector {w} lies outside the fan")
    if k == 0:
        k = 1
    u, v = fan[k - 1], fan[k]
    D = det(u, v)
    c, d = det(w, v), det(u, w)
    if c % D or d % D or c * D < 0 or d * D < 0:
        raise DomainError(f"{w} is not a lattice vector")
    return (c + d) // D


def lattice_length(a: int, b: int, point) -> tuple[int, int]:
    """``(ell_plus, ell_minus)`` of a lattice point ``(x, y)`` in ``[0,b]^2``.

    ``ell_plus`` is the longest increasing walk from the origin to ``<x, y>``;
    ``ell_minus`` the longest decreasing walk to ``<x, y - b>``.  Both come
    from the nonnegative decomposition in the bracketing pair of unit vectors.
    """
    x, y = int(point[0]), int(point[1])
    if not (0 <= x <= b and 0 <= y <= b):
        raise DomainError(f"{point} is outside [0,{b}]^2")
    if not on_lattice(a, b, (x, y)):
        raise DomainError(f"{point} is not on L_{{{a},{b}}}")
    fan = unit_vectors(a, b)
    return _decompose(fan.full_U, (x, y), True), _decompose(fan.full_V, (x, y - b), False)


def lattice_points(a: int, b: int) -> list[tuple[int, int]]:
    """Every point of L_{a,b} in the closed square ``[0,b]^2``, sorted by (x, y)."""
    _check_pair(a, b)
    pts = []
    for x in range(b + 1):
        y = (a * x) % b
        pts.append((x, y))
        if y == 0:
            pts.append((x, b))
    return sorted(pts)


def lattice_length_oracle(a: int, b: int, guard: int = ORACLE_GUARD) -> dict:
    """Longest increasing/decreasing walks by dynamic programming over the square.

    Uses nothing but the definition of increasing and decreasing steps.
    """
    if b > guard:
        raise ResourceError(f"lattice oracle is limited to b <= {guard}")
    pts = lattice_points(a, b)
    xs = np.array([p[0] for p in pts])
    ys = np.array([p[1] for p in pts])
    m = len(pts)
    inc = np.full(m, -1, dtype=np.int64)
    dec = np.full(m, -1, dtype=np.int64)
    start_inc = pts.index((0, 0))
    start_dec = pts.index((0, b))
    inc[start_inc] = 0
    dec[start_dec] = 0
    # points sorted by x then y: predecessors of an increasing step come
    # earlier; for decreasing steps sort by x then descending y
    for k in range(m):
        if k == start_inc:
            continue
        mask = (xs[:k] <= xs[k]) & (ys[:k] <= ys[k]) & (inc[:k] >= 0)
        if mask.any():
            inc[k] = inc[:k][mask].max() + 1
    order = sorted(range(m), key=lambda k: (pts[k][0], -pts[k][1]))
    done = np.zeros(m, dtype=bool)
    for k in order:
        if k != start_dec:
            mask = done & (xs <= xs[k]) & (ys >= ys[k]) & (dec >= 0)
            if mask.any():
                dec[k] = dec[mask].max() + 1
        done[k] = True
    return {pts[k]: (int(inc[k]), int(dec[k])) for k in range(m)}


# ---------------------------------------------------------------------------
# slope frames


@dataclass(frozen=True)
class SlopeFrame:
    tau: Fraction
    a_vec: LatticeVector
    b_vec: LatticeVector
    c_vec: LatticeVector
    d_vec: LatticeVector
    x_vec: LatticeVector
    y_vec: LatticeVector
    case_tag: str
    s: int


def _relations(case: str, x: LatticeVector, y: LatticeVector, s: int):
    if case == "1a":
        return x - s * y, x - (s - 1) * y, y + x, y
    if case == "1b":
        return x - y, x, y + s * x, y + (s - 1) * x
    if case == "2a":
        return x + (s - 1) * y, x + s * y, y, y - x
    return x, y + x, y - (s - 1) * x, y - s * x


def case_relations_hold(frame: SlopeFrame) -> bool:
    got = _relations(frame.case_tag, frame.x_vec, frame.y_vec, frame.s)
    return got == (frame.a_vec, frame.b_vec, frame.c_vec, frame.d_vec)


def _solve_s(case: str, a, b, c, d, x, y) -> Optional[int]:
    # each case pins s through one relation; check the rest afterwards
    if case == "1a":
        diff, unit = x - a, y
    elif case == "1b":
        diff, unit = c - y, x
    elif case == "2a":
        diff, unit = b - x, y
    else:
        diff, unit = y - d, x
    if unit.h != 0:
        s = Fraction(diff.h, unit.h)
    else:
        s = diff.v / unit.v
    if s.denominator != 1 or s < 1:
        return None
    s = int(s)
    return s if _relations(case, x, y, s) == (a, b, c, d) else None


def slope_frame(a: int, b: int, tau) -> SlopeFrame:
    """The vectors bracketing slopes ``tau`` and ``-tau`` and the basis they induce.

    ``a, b`` are consecutive increasing unit vectors with
    ``m_a >= tau > m_b``; ``c, d`` consecutive decreasing unit vectors with
    ``m_c > -tau >= m_d``.  Then ``x = c - d``, ``y = b - a``.  Case 1 holds
    when ``m_y <= -tau``; the sub-case compares lengths measured in the
    frame where ``tau`` becomes slope one.
    """
    tau = Fraction(tau)
    if tau < 1:
        raise DomainError("slope frames are defined for tau >= 1")
    fan = unit_vectors(a, b)
    kb = fan.full_U.first_where(lambda u: u[1] - tau * u[0], strict=True)
    kc = fan.full_V.first_where(lambda v: -(v[1] + tau * v[0]), strict=True)
    av, bv = (LatticeVector.of(fan.full_U[kb - 1]), LatticeVector.of(fan.full_U[kb]))
    dv, cv = (LatticeVector.of(fan.full_V[kc - 1]), LatticeVector.of(fan.full_V[kc]))
    x, y = cv - dv, bv - av
    major = "1" if y.v <= -tau * y.h else "2"
    first = "a" if y.norm2(tau) <= x.norm2(tau) else "b"
    for sub in (first, "b" if first == "a" else "a"):
        s = _solve_s(major + sub, av, bv, cv, dv, x, y)
        if s is not None:
            return SlopeFrame(tau, av, bv, cv, dv, x, y, major + sub, s)
    raise AssertionError(f"no case relation fits the frame of ({a},{b},{tau})")


# ---------------------------------------------------------------------------
# symmetries


def apply_symmetry(pair, which: str):
    """``rho`` or ``omega`` applied to a basis pair ``(x, y)``.

    rho: ``(x, y) -> (<-y2, y1>, <x2, -x1>)``; omega: ``(x, y) -> (<y1, -y2>, <x1, -x2>)``.
    Both preserve ``|x2*y1 - x1*y2|`` and swap increasing with decreasing.
    """
    (x1, x2), (y1, y2) = pair
    if which == "rho":
        return _vector(-y2, y1), _vector(x2, -x1)
    if which == "omega":
        return _vector(y1, -y2), _vector(x1, -x2)
    raise DomainError(f"unknown symmetry {which!r}")


@dataclass(frozen=True)
class PlaneVector:
    """A vector whose horizontal entry is rational too (images under rho)."""

    h: Fraction
    v: Fraction

    def __iter__(self):
        yield self.h
        yield self.v


def _vector(h, v):
    h = Fraction(h)
    return LatticeVector(int(h), v) if h.denominator == 1 else PlaneVector(h, Fraction(v))


def lattice_dump(a: int, b: int) -> list[tuple[int, int, int, int]]:
    """Rows ``(x, y, ell_plus, ell_minus)`` for every point of L_{a,b} in ``[0,b]^2``."""
    return [(x, y, *lattice_length(a, b, (x, y))) for x, y in lattice_points(a, b)]
