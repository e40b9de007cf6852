"""Shape predictions for w(n, alpha) from the rescaled lattice basis.

The permutation is read as the point set ``{(i, (n/N)(a*i mod N))}`` inside
``[0,n]^2`` for a rational ``a/N`` (alpha itself, or a deep convergent of an
irrational alpha).  A basis ``x, y`` of that lattice, written in terms of
convergents, controls everything: monotone path lengths, the crossing
counts ``l_j``, the k-path construction, and the two-slope boundary.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Context, Decimal
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .lattice import LatticeVector, apply_symmetry, slope_frame
from .numeric import PROXY_EXTRA_BLOCKS, AlphaSpec, DomainError, decimal_sqrt
from .schensted import Partition
from .sosperm import AlphaLike, as_alpha

Vec = tuple[Fraction, Fraction]


def _vec(p) -> Vec:
    h, v = p
    return (Fraction(h), Fraction(v))


# ---------------------------------------------------------------------------
# the rescaled frame


@dataclass(frozen=True)
class RescaledFrame:
    """Basis ``x, y`` of the rescaled lattice with ``x2*y1 - x1*y2 = n``.

    ``x = <q_{2h+star}, n q delta>``, ``y = <q_{2h+1}, -n q delta>``, deltas
    measured against ``a/N``.  ``case_tag`` is the slope-frame case of
    ``L_{a,N}`` at ``tau = N/n``.
    """

    n: int
    a: int
    N: int
    x_vec: LatticeVector
    y_vec: LatticeVector
    case_tag: str
    h: int
    star: int
    proxy_index: Optional[int] = None

    @property
    def tau(self) -> Fraction:
        return Fraction(self.N, self.n)

    @property
    def determinant(self) -> Fraction:
        x, y = self.x_vec, self.y_vec
        return x.v * y.h - x.h * y.v

    def row_basis(self) -> tuple[Vec, Vec]:
        """Basis with ``0 < m_x <= 1`` and ``m_y <= -1`` for increasing paths.

        Case 1 already has this form.  In case 2 the coordinates are swapped
        (the point set of the inverse permutation, which has the same shape).
        """
        x, y = _vec(self.x_vec), _vec(self.y_vec)
        if self.case_tag.startswith("1"):
            return x, y
        return (x[1], x[0]), (-y[1], -y[0])

    def column_basis(self) -> tuple[Vec, Vec]:
        """Basis whose increasing paths are the decreasing paths, via rho."""
        X, Y = apply_symmetry(self.row_basis(), "rho")
        return _vec(X), _vec(Y)


class TrivialShape(DomainError):
    """Raised when ``w(n, alpha)`` is the identity or the reversal."""

    def __init__(self, n: int, kind: str):
        super().__init__(f"w(n={n}) is the {kind} permutation; its shape is a single "
                         f"{'row' if kind == 'identity' else 'column'}")
        self.n = n
        self.kind = kind

    @property
    def partition(self) -> Partition:
        return Partition((self.n,)) if self.kind == "identity" else Partition((1,) * self.n)


def _first_small_delta(alpha: AlphaSpec, n: int) -> int:
    """Minimal ``i`` with ``delta_i < 1/n`` (exact)."""
    bound = Fraction(1, n)
    i = 0
    while True:
        c = alpha.convergent_fraction(i)
        if c is None:
            raise DomainError("expansion ended before delta dropped below 1/n")
        if alpha.compare(c - bound) > 0 and alpha.compare(c + bound) < 0:
            return i
        i += 1


def rescaled_frame(n: int, alpha: AlphaLike, extra: int = PROXY_EXTRA_BLOCKS) -> RescaledFrame:
    """Rescaled basis for ``w(n, alpha)``.

    Requires ``1/n < alpha < 1 - 1/n``; rational alpha must have denominator
    above ``n``.  Irrational alpha is replaced by the convergent ``p_m/q_m``
    with ``q_m > n``, ``m`` of the parity of the controlling index, pushed
    ``extra`` blocks deeper.
    """
    alpha, n = as_alpha(alpha), int(n)
    if n < 2:
        raise DomainError("n must be at least 2")
    if alpha.compare(Fraction(1, n)) <= 0:
        raise TrivialShape(n, "identity")
    if alpha.compare(1 - Fraction(1, n)) >= 0:
        raise TrivialShape(n, "reverse")
    i = _first_small_delta(alpha, n)
    if alpha.is_rational:
        if alpha.value.denominator <= n:
            raise DomainError(f"rational alpha {alpha.value} needs denominator > n = {n}")
        r, m = alpha.value, None
    else:
        m, r = alpha.proxy(n, parity=i % 2, extra=extra)
    a, N = r.numerator, r.denominator
    star = 2 if i % 2 == 0 else 0
    h = (i - 2) // 2 if star == 2 else (i - 1) // 2
    iy, ix = 2 * h + 1, 2 * h + star

    def vec(idx: int, sign: int) -> LatticeVector:
        p, q = alpha.convergent(idx)
        return LatticeVector(q, sign * n * abs(q * r - p))

    x, y = vec(ix, 1), vec(iy, -1)
    sf = slope_frame(a, N, Fraction(N, n))
    scale = Fraction(n, N)
    if (sf.x_vec.scale_vertical(scale), sf.y_vec.scale_vertical(scale)) != (x, y):
        raise AssertionError(f"convergent basis disagrees with the slope frame at n={n}")
    frame = RescaledFrame(n, a, N, x, y, sf.case_tag, h, star, m)
    if frame.determinant != n:
        raise AssertionError("basis determinant differs from n")
    return frame


# ---------------------------------------------------------------------------
# crossing counts


@dataclass(frozen=True)
class CrossingProfile:
    """Crossings of the lines ``f_j = {t*Y + j*X}`` with the lattice inside ``[0,n]^2``.

    ``X, Y`` is a basis with ``0 < m_X <= 1`` and ``m_Y <= -1``.  For real
    ``j`` the crossing set is ``{i*Y + j*X : i integer} ∩ [0,n]^2``.
    """

    n: int
    X: Vec
    Y: Vec

    @property
    def top(self) -> Fraction:
        """``Y1 - Y2``: index of the line through ``(n, n)``."""
        return self.Y[0] - self.Y[1]

    def window(self, j) -> tuple[int, int]:
        """Integer ``i`` range ``[lo, hi]`` of the crossing set on ``f_j``."""
        (X1, X2), (Y1, Y2) = self.X, self.Y
        n, j = self.n, Fraction(j)
        aY2 = -Y2
        lo = math.ceil(max(-j * X1 / Y1, (j * X2 - n) / aY2))
        hi = math.floor(min((n - j * X1) / Y1, j * X2 / aY2))
        return lo, hi

    def l(self, j) -> int:
        lo, hi = self.window(j)
        return max(0, hi - lo + 1)

    def point(self, i: int, j) -> Vec:
        (X1, X2), (Y1, Y2) = self.X, self.Y
        return (i * Y1 + j * X1, i * Y2 + j * X2)

    def jbar(self, j) -> Fraction:
        return self.top - Fraction(j)

    def _feasible(self, k: int) -> Optional[tuple[int, int]]:
        # a run i0..i0+k-1 fits on some line iff these hold (uses x2*y1 - x1*y2 = n)
        (X1, X2), (Y1, Y2) = self.X, self.Y
        if k < 1 or (k - 1) * Y1 > self.n or (k - 1) * (-Y2) > self.n:
            return None
        lo, hi = math.ceil(-X1), math.floor(X2 - k + 1)
        return (lo, hi) if lo <= hi else None

    def _max_lo(self, i0: int, k: int) -> Fraction:
        (X1, X2), (Y1, Y2) = self.X, self.Y
        return max(-i0 * Y1 / X1, (i0 + k - 1) * (-Y2) / X2)

    def _min_hi(self, i0: int, k: int) -> Fraction:
        (X1, X2), (Y1, Y2) = self.X, self.Y
        return min((self.n - (i0 + k - 1) * Y1) / X1, (self.n + i0 * (-Y2)) / X2)

    def j_k(self, k: int) -> Optional[Fraction]:
        """Least ``j`` whose line holds at least ``k`` crossings."""
        rng = self._feasible(k)
        if rng is None:
            return None
        (X1, X2), (Y1, Y2) = self.X, self.Y
        star = -(k - 1) * (-Y2) * X1 / self.n
        cands = {min(max(c, rng[0]), rng[1]) for c in (math.floor(star), math.ceil(star))}
        return min(self._max_lo(c, k) for c in cands)

    def j_prime_k(self, k: int) -> Optional[Fraction]:
        """Greatest ``j`` whose line holds at least ``k`` crossings."""
        rng = self._feasible(k)
        if rng is None:
            return None
        (X1, X2), (Y1, Y2) = self.X, self.Y
        star = (X2 - X1) - X2 * Y1 * (k - 1) / self.n
        cands = {min(max(c, rng[0]), rng[1]) for c in (math.floor(star), math.ceil(star))}
        return max(self._min_hi(c, k) for c in cands)

    @property
    def J0(self) -> Fraction:
        (X1, X2), (Y1, Y2) = self.X, self.Y
        return Y1 * Y2 * (X1 - X2) / (X1 * Y2 + X2 * Y1)

    @property
    def J0_star(self) -> Fraction:
        (X1, X2), (Y1, Y2) = self.X, self.Y
        return X1 * X2 * (Y1 + Y2) / (X1 * Y2 + X2 * Y1)

    def lin(self, k: int) -> int:
        """``floor(j'_k) - ceil(j_k) + 1``.

        For ``k <= l(J0)`` this is the number of integer lines with at least
        ``k`` crossings; beyond that range it only bounds that number above.
        """
        jk, jpk = self.j_k(k), self.j_prime_k(k)
        if jk is None:
            return 0
        return max(0, math.floor(jpk) - math.ceil(jk) + 1)

    def greene_bound(self, k: int) -> int:
        """``sum_{i=1}^{floor(Y1-Y2)} min(l_i, k)``, an upper bound for ``I_k``."""
        return sum(min(self.l(i), k) for i in range(1, math.floor(self.top) + 1))

    def conjugate(self) -> "CrossingProfile":
        X, Y = apply_symmetry((self.X, self.Y), "rho")
        return CrossingProfile(self.n, _vec(X), _vec(Y))


def crossing_profile(frame: RescaledFrame, side: str = "rows") -> CrossingProfile:
    """Profile for increasing paths (``rows``) or, through rho, decreasing ones (``columns``)."""
    X, Y = frame.row_basis() if side == "rows" else frame.column_basis()
    return CrossingProfile(frame.n, X, Y)


# ---------------------------------------------------------------------------
# the k-path construction


@dataclass
class KPathCertificate:
    k: int
    J: Fraction
    variant: str                       # "top" (J = j_k) or "bottom" (J = jbar of j'_k)
    chains: list[list[Vec]]
    greene_bound: int
    corner_points: int                 # points of S at corners of the box
    problems: list[str] = field(default_factory=list)

    @property
    def size(self) -> int:
        return sum(len(c) for c in self.chains)

    @property
    def permutation_points(self) -> int:
        return self.size - self.corner_points

    @property
    def ok(self) -> bool:
        return not self.problems


def construct_k_paths(frame: Union[RescaledFrame, CrossingProfile], k: int) -> KPathCertificate:
    """A union of ``k`` increasing lattice paths covering nearly every crossing.

    Lines below ``j`` feed into ``k`` parallel copies of one increasing path
    joining the crossing sets near ``j`` and ``Y1 - Y2 - j``; the lines above
    feed out of it.  Every point is assigned to a chain and the chains are
    checked, so the result is a certificate rather than a claim.
    """
    prof = frame if isinstance(frame, CrossingProfile) else crossing_profile(frame)
    limit = prof.l(prof.J0)
    if not 1 <= k <= limit:
        raise DomainError(f"k = {k} outside 1..l(J0) = {limit}")
    jk, jpk = prof.j_k(k), prof.j_prime_k(k)
    top = prof.top
    if jk >= prof.jbar(jpk):
        J, variant = jk, "top"
    else:
        J, variant = prof.jbar(jpk), "bottom"
    Jb = prof.jbar(J)
    j_start, j_end = math.ceil(J), math.floor(Jb)
    if variant == "top":
        i_s, i_e = prof.window(J)[0], prof.window(Jb)[0]
    else:
        i_s, i_e = prof.window(J)[1] - (k - 1), prof.window(Jb)[1] - (k - 1)

    (X1, X2), (Y1, Y2) = prof.X, prof.Y
    problems: list[str] = []
    chains: list[dict] = [dict() for _ in range(k)]   # (i, j) -> point, per chain

    def add(c: int, i: int, j: int, label: str):
        if not 0 <= c < k:
            problems.append(f"{label} point (i={i}, j={j}) falls outside the k chains")
            return
        chains[c][(i, j)] = prof.point(i, j)

    # the middle: k translates of one increasing path.  When the drop does
    # not fit, the path also uses the neighbouring lower (top variant) or
    # upper (bottom variant) line, which already carries the same offset.
    e_max = math.floor(X1 / Y1)
    drop = i_s - i_e
    first, final = j_start, j_end
    if drop > (j_end - j_start) * e_max:
        if variant == "top" and j_start > 1:
            first -= 1
        elif variant == "bottom" and j_end < math.floor(top):
            final += 1
    steps = final - first
    if steps < 0 or drop < 0 or drop > steps * e_max:
        problems.append(f"no increasing path with {steps} steps and drop {drop}")
    else:
        path = [i_s]
        for t in range(steps):
            path.append(path[-1] - ((t + 1) * drop // steps - t * drop // steps))
        for c in range(k):
            for t, i in enumerate(path):
                j = first + t
                if j_start <= j <= j_end or _in_box(prof.point(i + c, j), prof.n):
                    add(c, i + c, first + t, "middle")

    last = math.floor(top)
    lower_end = first - 1 if variant == "top" else j_start - 3
    upper_start = j_end + 3 if variant == "top" else final + 1
    for j in range(1, lower_end + 1):
        lo, hi = prof.window(j)
        for i in range(lo, hi + 1):
            add(i - i_s, i, j, "lower")
    for j in range(upper_start, last + 1):
        lo, hi = prof.window(j)
        for i in range(lo, hi + 1):
            add(i - i_e, i, j, "upper")
    # the two short bridges next to the middle
    if variant == "top":
        for c in range(k):
            for t in (1, 2):
                if j_end + t <= last and _in_box(prof.point(i_e + c, j_end + t), prof.n):
                    add(c, i_e + c, j_end + t, "bridge")
    else:
        for c in range(k):
            for t in (1, 2):
                if j_start - t >= 1 and _in_box(prof.point(i_s + c, j_start - t), prof.n):
                    add(c, i_s + c, j_start - t, "bridge")

    ordered = [[pts[key] for key in sorted(pts, key=lambda ij: ij[1])] for pts in chains]
    seen: set = set()
    corners = 0
    n = prof.n
    for c, chain in enumerate(ordered):
        for p in chain:
            if not _in_box(p, n):
                problems.append(f"chain {c}: {p} outside the box")
            if p in seen:
                problems.append(f"point {p} used twice")
            seen.add(p)
            if p[0] in (0, n) and p[1] in (0, n):
                corners += 1
        for p, q in zip(chain, chain[1:]):
            if not (q[0] >= p[0] and q[1] >= p[1]):
                problems.append(f"chain {c} is not increasing at {p} -> {q}")
    cert = KPathCertificate(k, J, variant, ordered, prof.greene_bound(k), corners, problems)
    if cert.size < cert.greene_bound - 3:
        problems.append(f"|S| = {cert.size} < bound - 3 = {cert.greene_bound - 3}")
    return cert


def _in_box(p: Vec, n: int) -> bool:
    return 0 <= p[0] <= n and 0 <= p[1] <= n


# ---------------------------------------------------------------------------
# predictions


@dataclass(frozen=True)
class ShapePrediction:
    """Arm/leg intervals, row/column estimates, and the two-slope boundary."""

    n: int
    frame: RescaledFrame

    # basis entries of the untransposed frame
    @property
    def _xy(self):
        x, y = self.frame.x_vec, self.frame.y_vec
        return Fraction(x.h), x.v, Fraction(y.h), y.v

    @property
    def arm_hi(self) -> Fraction:
        x1, x2, y1, y2 = self._xy
        return y1 - y2

    @property
    def leg_hi(self) -> Fraction:
        x1, x2, y1, y2 = self._xy
        return x1 + x2

    @property
    def arm_bounds(self) -> tuple[Fraction, Fraction]:
        """Half-open ``(lo, hi]``."""
        return self.arm_hi - 2, self.arm_hi

    @property
    def leg_bounds(self) -> tuple[Fraction, Fraction]:
        return self.leg_hi - 2, self.leg_hi

    @property
    def row_rate(self) -> Fraction:
        """``2|y1 y2|/n``: drop of the row estimate per row."""
        x1, x2, y1, y2 = self._xy
        return 2 * abs(y1 * y2) / self.n

    @property
    def col_rate(self) -> Fraction:
        x1, x2, y1, y2 = self._xy
        return 2 * x1 * x2 / self.n

    def row_center(self, k: int) -> Fraction:
        return self.arm_hi - k * self.row_rate

    def col_center(self, k: int) -> Fraction:
        return self.leg_hi - k * self.col_rate

    @property
    def row_radius(self) -> Fraction:
        return 4 + self.row_rate

    @property
    def col_radius(self) -> Fraction:
        return 4 + self.col_rate

    @property
    def corner(self) -> tuple[Fraction, Fraction]:
        x1, x2, y1, y2 = self._xy
        den = x1 * y2 + x2 * y1
        return self.n * (y1 + y2) / den, self.n * (x2 - x1) / den

    @property
    def x0(self) -> Fraction:
        return self.corner[0]

    @property
    def y0(self) -> Fraction:
        return self.corner[1]

    @property
    def row_range(self) -> int:
        """Rows ``k = 1..row_range`` are covered by the estimate (``k <= y0 - 1``)."""
        return max(0, math.floor(self.y0 - 1))

    @property
    def col_range(self) -> int:
        return max(0, math.floor(self.x0 - 1))

    # the boundary
    @property
    def pieces(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        """``((intercept, slope), (intercept, slope))`` of the two boundary lines."""
        first = (self.leg_hi, -self.col_rate)
        rate = self.row_rate
        second = (self.arm_hi / rate, -1 / rate)
        return first, second

    @property
    def slopes(self) -> tuple[Fraction, Fraction]:
        return self.pieces[0][1], self.pieces[1][1]

    @property
    def domain(self) -> tuple[Fraction, Fraction]:
        return Fraction(0), self.arm_hi

    def L(self, x) -> Fraction:
        x = Fraction(x)
        if not 0 <= x <= self.arm_hi:
            raise DomainError(f"x = {x} outside [0, {self.arm_hi}]")
        (c1, m1), (c2, m2) = self.pieces
        return c1 + m1 * x if x <= self.x0 else c2 + m2 * x

    def L_array(self, xs: np.ndarray) -> np.ndarray:
        (c1, m1), (c2, m2) = self.pieces
        xs = np.asarray(xs, dtype=float)
        return np.where(xs <= float(self.x0), float(c1) + float(m1) * xs,
                        float(c2) + float(m2) * xs)


def shape_prediction(n: int, alpha: AlphaLike) -> ShapePrediction:
    return ShapePrediction(n, rescaled_frame(n, alpha))


# ---------------------------------------------------------------------------
# distance to the staircase


def _segment_distance(px, py, segs: np.ndarray) -> np.ndarray:
    """Distance from each point to the closest of the segments ``(x0,y0,x1,y1)``."""
    ax, ay, bx, by = (segs[:, c][None, :] for c in range(4))
    px, py = px[:, None], py[:, None]
    dx, dy = bx - ax, by - ay
    ll = dx * dx + dy * dy
    t = np.where(ll > 0, ((px - ax) * dx + (py - ay) * dy) / np.where(ll > 0, ll, 1), 0.0)
    t = np.clip(t, 0.0, 1.0)
    cx, cy = ax + t * dx, ay + t * dy
    return np.sqrt(((px - cx) ** 2 + (py - cy) ** 2).min(axis=1))


def boundary_distance(lam: Partition, pred: ShapePrediction,
                      subdivisions: int = 16) -> tuple[float, float]:
    """``(max, argmax)`` over sampled ``x`` of the distance from ``(x, L(x))`` to the staircase.

    Samples: every integer, every staircase corner, ``x0``, both ends of the
    domain, and ``subdivisions`` equal steps inside each gap between them.
    """
    stair = np.array(lam.staircase(), dtype=float)
    segs = np.hstack([stair[:-1], stair[1:]])
    lo, hi = pred.domain
    knots = {float(lo), float(hi), float(pred.x0)}
    knots.update(float(v) for v in range(0, math.floor(hi) + 1))
    knots.update(float(p[0]) for p in stair if lo <= p[0] <= hi)
    knots = np.array(sorted(k for k in knots if float(lo) <= k <= float(hi)))
    if subdivisions > 1 and len(knots) > 1:
        fr = np.arange(subdivisions) / subdivisions
        fine = (knots[:-1, None] + (knots[1:] - knots[:-1])[:, None] * fr[None, :]).ravel()
        xs = np.concatenate([fine, knots[-1:]])
    else:
        xs = knots
    d = _segment_distance(xs, pred.L_array(xs), segs)
    k = int(np.argmax(d))
    return float(d[k]), float(xs[k])


# ---------------------------------------------------------------------------
# normalized extrema and the comparison curve


def _precise_delta(alpha: AlphaSpec, idx: int, digits: int) -> tuple[int, Fraction]:
    """``(q_idx, delta_idx)`` with ``delta`` accurate to well beyond ``digits`` digits.

    ``delta`` is measured against a convergent ``p_m/q_m`` deep enough that
    the error (at most ``1/q_m^2``) is below ``delta * 10^-(digits + 4)``.
    """
    conv = alpha.convergent(idx)
    if conv is None:
        raise DomainError(f"expansion too short for index {idx}")
    p, q = conv
    m = idx + 1
    while True:
        deeper = alpha.convergent(m)
        if deeper is None:  # rational alpha: the last convergent is alpha itself
            delta = abs(alpha.value - Fraction(p, q))
            break
        delta = abs(Fraction(*deeper) - Fraction(p, q))
        if delta > 0 and deeper[1] ** 2 * delta > 10 ** (digits + 4):
            break
        m += 1
    if delta == 0:
        raise DomainError(f"delta_{idx} = 0")
    return q, delta


def normalized_extrema(alpha: AlphaLike, h: int, digits: int = 12) -> tuple[Decimal, Decimal, Decimal, Decimal]:
    """``(M+_{2h}, m-_{2h}, m+_{2h+1}, M-_{2h+1})`` to ``digits`` significant digits."""
    alpha = as_alpha(alpha)
    ctx = Context(prec=digits + 10)
    out = []
    for idx in (2 * h, 2 * h + 1):
        q, delta = _precise_delta(alpha, idx, digits)
        root = decimal_sqrt(delta, digits + 10)
        out.append((ctx.divide(1, ctx.multiply(q, root)), ctx.multiply(2 * q, root)))
    (Mp, mm), (Mm, mp) = out
    final = Context(prec=digits)
    return tuple(final.plus(v) for v in (Mp, mm, mp, Mm))


def lsvk_curve(samples: int = 201) -> np.ndarray:
    """Points ``(x, y)`` of the limit curve for uniformly random permutations."""
    if samples < 2:
        raise DomainError("need at least two samples")
    u = np.linspace(-2.0, 2.0, samples)
    v = (2 / np.pi) * (u * np.arcsin(u / 2) + np.sqrt(np.clip(4 - u * u, 0, None)))
    return np.column_stack([(v + u) / 2, (v - u) / 2])


# ---------------------------------------------------------------------------
# checking a prediction against an actual shape

DISTANCE_BOUND = 8
ROW_RADIUS_BOUND = 6


@dataclass
class Verification:
    """Every bound of the prediction evaluated on one ``(n, alpha)``."""

    n: int
    shape: Partition
    prediction: Optional[ShapePrediction]
    max_dist: Optional[float] = None
    argmax_x: Optional[float] = None
    worst_row: Fraction = Fraction(0)
    worst_col: Fraction = Fraction(0)
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def arm(self) -> int:
        return self.shape[0] if len(self.shape) else 0

    @property
    def leg(self) -> int:
        return len(self.shape)


def verify_prediction(n: int, alpha: AlphaLike, lam: Optional[Partition] = None,
                      greene: bool = False) -> Verification:
    """Evaluate the arm/leg, row/column and distance bounds on ``shape(w(n, alpha))``.

    With ``greene`` set, also checks ``sum min(l_i,k) - 3 <= I_k <= sum min(l_i,k)``
    and ``|lambda_k - lin(k)| <= 3`` for every ``k <= l(J0)``, and that the corner
    sits within 1 of ``(l*(J0*), l(J0))``.
    """
    from .schensted import shape as shape_of
    from .sosperm import sos_permutation

    alpha, n = as_alpha(alpha), int(n)
    if lam is None:
        lam = shape_of(sos_permutation(n, alpha))
    try:
        pred = shape_prediction(n, alpha)
    except TrivialShape as t:
        v = Verification(n, lam, None)
        if lam != t.partition:
            v.violations.append(f"expected the {t.kind} shape, got {lam}")
        return v
    v = Verification(n, lam, pred)
    arm, leg = v.arm, v.leg
    lo, hi = pred.arm_bounds
    if not lo < arm <= hi:
        v.violations.append(f"arm {arm} outside ({lo}, {hi}]")
    lo, hi = pred.leg_bounds
    if not lo < leg <= hi:
        v.violations.append(f"leg {leg} outside ({lo}, {hi}]")
    cols = lam.conjugate()
    for k in range(1, pred.row_range + 1):
        got = lam[k - 1] if k <= len(lam) else 0
        dev = abs(got - pred.row_center(k))
        v.worst_row = max(v.worst_row, dev)
        if dev >= pred.row_radius:
            v.violations.append(f"row {k}: |{got} - {pred.row_center(k)}| >= {pred.row_radius}")
    for k in range(1, pred.col_range + 1):
        got = cols[k - 1] if k <= len(cols) else 0
        dev = abs(got - pred.col_center(k))
        v.worst_col = max(v.worst_col, dev)
        if dev >= pred.col_radius:
            v.violations.append(f"column {k}: |{got} - {pred.col_center(k)}| >= {pred.col_radius}")
    for name, r in (("row", pred.row_radius), ("column", pred.col_radius)):
        if r >= ROW_RADIUS_BOUND:
            v.violations.append(f"{name} radius {r} is not below {ROW_RADIUS_BOUND}")
    v.max_dist, v.argmax_x = boundary_distance(lam, pred)
    if not v.max_dist < DISTANCE_BOUND:
        v.violations.append(f"distance {v.max_dist:.4f} at x = {v.argmax_x:.4f} is not below 8")
    if greene:
        v.violations.extend(_greene_violations(pred, lam))
    return v


def _greene_violations(pred: ShapePrediction, lam: Partition) -> list[str]:
    out = []
    prof = crossing_profile(pred.frame)
    sums = lam.prefix_sums()
    for k in range(1, prof.l(prof.J0) + 1):
        Ik = sums[min(k, len(sums)) - 1]
        bound = prof.greene_bound(k)
        if not bound - 3 <= Ik <= bound:
            out.append(f"I_{k} = {Ik} outside [{bound - 3}, {bound}]")
        row = lam[k - 1] if k <= len(lam) else 0
        if abs(row - prof.lin(k)) > 3:
            out.append(f"row {k} = {row} is more than 3 from lin({k}) = {prof.lin(k)}")
    cols = crossing_profile(pred.frame, "columns")
    corner = (cols.l(cols.J0), prof.l(prof.J0))
    x0, y0 = pred.corner
    if abs(x0 - corner[0]) > 1 or abs(y0 - corner[1]) > 1:
        out.append(f"corner ({x0}, {y0}) not within 1 of {corner}")
    return out
