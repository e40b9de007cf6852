"""Row-insertion RSK, shapes, monotone subsequences, and a Greene oracle."""
from __future__ import annotations

import bisect
from dataclasses import dataclass
from itertools import accumulate
from typing import Sequence, Union

import numba
import numpy as np

from .numeric import DomainError, ResourceError
from .sosperm import Permutation

GREENE_GUARD = 12
_KERNEL_CELLS = 50_000_000

PermLike = Union[Permutation, Sequence[int]]


@dataclass(frozen=True)
class Partition:
    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        if any(r <= 0 for r in rows) or any(a < b for a, b in zip(rows, rows[1:])):
            raise DomainError(f"{rows} is not a partition")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return sum(self.rows)

    def __len__(self):
        return len(self.rows)

    def __getitem__(self, k):
        return self.rows[k]

    def conjugate(self) -> "Partition":
        if not self.rows:
            return self
        cols = [0] * self.rows[0]
        for r in self.rows:
            for c in range(r):
                cols[c] += 1
        return Partition(tuple(cols))

    def prefix_sums(self) -> list[int]:
        return list(accumulate(self.rows))

    def boxes(self) -> list[tuple[int, int]]:
        """Lower-left corners ``(l-1, k-1)`` of the unit boxes of the planar set."""
        return [(l, k) for k, r in enumerate(self.rows) for l in range(r)]

    def staircase(self) -> list[tuple[int, int]]:
        """Vertices of the off-axis boundary, from ``(0, rows)`` to ``(arm, 0)``."""
        m = len(self.rows)
        pts = [(0, m)]
        for k in range(m - 1, -1, -1):
            x = self.rows[k]
            pts.append((x, k + 1))
            pts.append((x, k))
        # merge collinear vertices
        out = [pts[0]]
        for p in pts[1:]:
            if p == out[-1]:
                continue
            if len(out) >= 2 and (out[-2][0] == out[-1][0] == p[0] or out[-2][1] == out[-1][1] == p[1]):
                out[-1] = p
            else:
                out.append(p)
        return out

    def __str__(self):
        return ",".join(map(str, self.rows))


@dataclass(frozen=True)
class TableauPair:
    """Insertion tableau ``P`` and recording tableau ``Q``; row 0 is the bottom row."""

    P: tuple[tuple[int, ...], ...]
    Q: tuple[tuple[int, ...], ...]

    @property
    def shape(self) -> Partition:
        return Partition(tuple(len(r) for r in self.P))

    def french(self, which: str = "P") -> str:
        rows = self.P if which == "P" else self.Q
        width = len(str(max((max(r) for r in rows), default=0)))
        return "\n".join(" ".join(str(v).rjust(width) for v in r) for r in reversed(rows))


def _values(w: PermLike) -> list[int]:
    return list(w.values if isinstance(w, Permutation) else w)


def rsk(w: PermLike) -> TableauPair:
    """Schensted row insertion, building both tableaux."""
    P: list[list[int]] = []
    Q: list[list[int]] = []
    for step, x in enumerate(_values(w), start=1):
        r = 0
        while True:
            if r == len(P):
                P.append([x])
                Q.append([step])
                break
            row = P[r]
            pos = bisect.bisect_right(row, x)
            if pos == len(row):
                row.append(x)
                Q[r].append(step)
                break
            row[pos], x = x, row[pos]
            r += 1
    return TableauPair(tuple(map(tuple, P)), tuple(map(tuple, Q)))


def _lis_length(vals: Sequence[int]) -> int:
    tails: list[int] = []
    for v in vals:
        pos = bisect.bisect_left(tails, v)
        if pos == len(tails):
            tails.append(v)
        else:
            tails[pos] = v
    return len(tails)


def arm_leg(w: PermLike) -> tuple[int, int]:
    """Longest increasing and longest decreasing subsequence lengths (patience sorting)."""
    vals = _values(w)
    return _lis_length(vals), _lis_length([-v for v in vals])


@numba.njit(cache=True)
def _shape_kernel(vals, n_rows, n_cols):
    rows = np.empty((n_rows, n_cols), dtype=np.int64)
    lens = np.zeros(n_rows, dtype=np.int64)
    used = 0
    for x in vals:
        r = 0
        while True:
            if r == used:
                rows[r, 0] = x
                lens[r] = 1
                used += 1
                break
            length = lens[r]
            lo, hi = 0, length
            while lo < hi:
                mid = (lo + hi) >> 1
                if rows[r, mid] > x:
                    hi = mid
                else:
                    lo = mid + 1
            if lo == length:
                rows[r, length] = x
                lens[r] = length + 1
                break
            y = rows[r, lo]
            rows[r, lo] = x
            x = y
            r += 1
    return lens[:used].copy()


def shape(w: PermLike) -> Partition:
    """Schensted shape, tracking only the insertion rows (no recording tableau)."""
    vals = _values(w)
    if not vals:
        return Partition(())
    arm, leg = arm_leg(vals)
    if arm * leg <= _KERNEL_CELLS:
        lens = _shape_kernel(np.asarray(vals, dtype=np.int64), leg, arm)
        return Partition(tuple(int(v) for v in lens))
    return rsk(vals).shape


@numba.njit(cache=True)
def _greene_kernel(vals):
    n = vals.shape[0]
    best_inc = np.zeros(n + 1, dtype=np.int64)
    best_dec = np.zeros(n + 1, dtype=np.int64)
    sub = np.empty(n, dtype=np.int64)
    tails = np.empty(n, dtype=np.int64)
    for mask in range(1 << n):
        m = 0
        for i in range(n):
            if (mask >> i) & 1:
                sub[m] = vals[i]
                m += 1
        # longest increasing and decreasing subsequence of the subset
        lis = 0
        for t in range(m):
            v = sub[t]
            lo, hi = 0, lis
            while lo < hi:
                mid = (lo + hi) >> 1
                if tails[mid] < v:
                    lo = mid + 1
                else:
                    hi = mid
            tails[lo] = v
            if lo == lis:
                lis += 1
        lds = 0
        for t in range(m):
            v = -sub[t]
            lo, hi = 0, lds
            while lo < hi:
                mid = (lo + hi) >> 1
                if tails[mid] < v:
                    lo = mid + 1
                else:
                    hi = mid
            tails[lo] = v
            if lo == lds:
                lds += 1
        # a set is a union of k increasing sequences iff it has no decreasing
        # sequence of length k + 1 (Dilworth), and symmetrically
        if m > best_inc[lds]:
            best_inc[lds] = m
        if m > best_dec[lis]:
            best_dec[lis] = m
    for k in range(1, n + 1):
        if best_inc[k - 1] > best_inc[k]:
            best_inc[k] = best_inc[k - 1]
        if best_dec[k - 1] > best_dec[k]:
            best_dec[k] = best_dec[k - 1]
    return best_inc, best_dec


def greene_table(w: PermLike, guard: int = GREENE_GUARD) -> tuple[list[int], list[int]]:
    """``([I_0..I_n], [D_0..D_n])`` by exhaustive search over all subsequences."""
    vals = _values(w)
    if len(vals) > guard:
        raise ResourceError(f"exhaustive Greene search is limited to n <= {guard}; "
                            "use shape(w).prefix_sums() instead")
    inc, dec = _greene_kernel(np.asarray(vals, dtype=np.int64))
    return [int(v) for v in inc], [int(v) for v in dec]


def greene_oracle(w: PermLike, k: int, guard: int = GREENE_GUARD) -> tuple[int, int]:
    """``(I_k, D_k)``: largest unions of k increasing / k decreasing subsequences."""
    if k < 0:
        raise DomainError("k must be nonnegative")
    inc, dec = greene_table(w, guard)
    k = min(k, len(inc) - 1)
    return inc[k], dec[k]
