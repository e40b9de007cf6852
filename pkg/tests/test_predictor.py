import math
import random
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from sosshape.numeric import DomainError, parse_alpha
from sosshape.predictor import (ShapePrediction, TrivialShape, boundary_distance,
                                construct_k_paths, crossing_profile, lsvk_curve,
                                normalized_extrema, rescaled_frame, shape_prediction,
                                verify_prediction)
from sosshape.schensted import Partition, shape
from sosshape.sosperm import sos_permutation

F = Fraction
mpmath.mp.dps = 50


def random_frames(count, seed, top=1500):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(6, top)
        N = rng.randint(n + 1, 4 * n)
        a = rng.randint(1, N - 1)
        if math.gcd(a, N) != 1:
            continue
        try:
            out.append(rescaled_frame(n, F(a, N)))
        except DomainError:
            continue
    return out


def box_points(prof):
    """All lattice points iY + jX in the box, found by scanning a generous (i, j) range."""
    (X1, X2), (Y1, Y2) = prof.X, prof.Y
    span = int(prof.n / min(X1, Y1)) + 4
    pts = {}
    for j in range(-2, math.ceil(prof.top) + 3):
        for i in range(-span, span + 1):
            p = prof.point(i, j)
            if 0 <= p[0] <= prof.n and 0 <= p[1] <= prof.n:
                pts[p] = (i, j)
    return pts


def brute_l(prof, j):
    return sum(1 for i in range(-4 * prof.n, 4 * prof.n)
               if 0 <= prof.point(i, j)[0] <= prof.n and 0 <= prof.point(i, j)[1] <= prof.n)


def brute_extremes(prof, k):
    """Least and greatest real j with l(j) >= k, from all breakpoints of the window bounds."""
    (X1, X2), (Y1, Y2) = prof.X, prof.Y
    n, aY2 = prof.n, -Y2
    cands = set()
    for m in range(-4 * n, 4 * n):
        cands.update((-m * Y1 / X1, (n + m * aY2) / X2, (n - m * Y1) / X1, m * aY2 / X2))
    good = sorted(c for c in cands if prof.l(c) >= k)
    return (good[0], good[-1]) if good else (None, None)


def test_worked_frame():
    fr = rescaled_frame(210, F(25, 211))
    assert (fr.x_vec.h, fr.x_vec.v) == (17, F(630, 211))
    assert (fr.y_vec.h, fr.y_vec.v) == (8, F(-2310, 211))
    assert fr.case_tag == "1a" and fr.determinant == 210 and (fr.h, fr.star) == (0, 2)


def test_worked_boundary():
    p = shape_prediction(210, F(25, 211))
    assert p.pieces == ((F(4217, 211), F(-102, 211)), (F(1999, 88), F(-211, 176)))
    assert p.x0 == F(622, 163) and p.domain == (0, F(3998, 211))
    assert p.L(p.x0) == p.y0


def test_e_slopes():
    p = shape_prediction(4700, "e")
    assert [f"{float(s):.5f}" for s in p.slopes] == ["-1.01332", "-3.53850"]
    assert (p.frame.h, p.frame.star) == (3, 0)


def test_corner_lies_on_both_lines():
    rng = random.Random(12)
    done = 0
    while done < 1000:
        n = rng.randint(4, 10 ** 6)
        N = rng.randint(n + 1, 10 ** 7)
        a = rng.randint(1, N - 1)
        if math.gcd(a, N) != 1:
            continue
        try:
            p = shape_prediction(n, F(a, N))
        except DomainError:
            continue
        (c1, m1), (c2, m2) = p.pieces
        assert c1 + m1 * p.x0 == c2 + m2 * p.x0 == p.y0
        done += 1


def test_frames_reproduce_the_permutation_points():
    for fr in random_frames(25, 13, top=300):
        prof = crossing_profile(fr)
        n, a, N = fr.n, fr.a, fr.N
        perm = {(F(t), F(n * ((a * t) % N), N)) for t in range(n + 1)}
        if not fr.case_tag.startswith("1"):
            perm = {(y, x) for x, y in perm}
        corners = {(F(0), F(0)), (F(0), F(n)), (F(n), F(0)), (F(n), F(n))}
        pts = set(box_points(prof))
        assert perm <= pts and pts - perm <= corners


def test_crossing_counts_against_enumeration():
    for fr in random_frames(12, 14, top=200):
        prof = crossing_profile(fr)
        pts = box_points(prof)
        for j in range(0, math.floor(prof.top) + 2):
            assert prof.l(j) == sum(1 for i, jj in pts.values() if jj == j)
        for j in (prof.J0, prof.top / 3, F(1, 2)):
            assert prof.l(j) == brute_l(prof, j)


def test_extreme_lines_against_breakpoint_search():
    for fr in random_frames(8, 15, top=120):
        prof = crossing_profile(fr)
        limit = prof.l(prof.J0)
        for k in range(1, limit + 2):
            assert (prof.j_k(k), prof.j_prime_k(k)) == brute_extremes(prof, k)
            count = sum(1 for i in range(-2, math.floor(prof.top) + 3) if prof.l(i) >= k)
            # beyond l(J0) the lines with k crossings need not be consecutive
            assert prof.lin(k) == count if k <= limit else prof.lin(k) >= count


def test_conjugate_profile():
    for fr in random_frames(20, 16):
        rows, cols = crossing_profile(fr), crossing_profile(fr, "columns")
        assert rows.J0_star == cols.J0
        assert rows.conjugate().X == cols.X


def test_construction_on_worked_frame():
    fr = rescaled_frame(210, F(25, 211))
    lam = shape(sos_permutation(210, F(25, 211)))
    sums = lam.prefix_sums()
    prof = crossing_profile(fr)
    for k in range(1, prof.l(prof.J0) + 1):
        cert = construct_k_paths(fr, k)
        assert cert.ok, cert.problems
        assert len(cert.chains) == k
        assert cert.greene_bound - 3 <= cert.size
        assert cert.permutation_points <= sums[k - 1] <= cert.greene_bound
    assert construct_k_paths(fr, 1).size >= prof.lin(1) - 3
    with pytest.raises(DomainError):
        construct_k_paths(fr, prof.l(prof.J0) + 1)


def test_construction_on_random_frames():
    for fr in random_frames(8, 17, top=800):
        lam = shape(sos_permutation(fr.n, F(fr.a, fr.N)))
        prof = crossing_profile(fr)
        for k in range(1, prof.l(prof.J0) + 1, 3):
            cert = construct_k_paths(fr, k)
            assert cert.ok, cert.problems
            assert cert.permutation_points <= lam.prefix_sums()[min(k, len(lam)) - 1]


@pytest.mark.parametrize("n,a,N", [(1109, 249, 1250), (710, 1061, 2129)])
def test_construction_on_thin_frames(n, a, N):
    # only a handful of lines, so for large k both ends of the middle path
    # share a line and the path borrows the neighbouring one
    fr = rescaled_frame(n, F(a, N))
    sums = shape(sos_permutation(n, F(a, N))).prefix_sums()
    prof = crossing_profile(fr)
    assert prof.top < 10
    for k in range(prof.l(prof.J0) - 25, prof.l(prof.J0) + 1):
        cert = construct_k_paths(fr, k)
        assert cert.ok, cert.problems
        assert cert.permutation_points <= sums[min(k, len(sums)) - 1]


def test_verification_on_random_rationals():
    for fr in random_frames(30, 18, top=3000):
        v = verify_prediction(fr.n, F(fr.a, fr.N), greene=True)
        assert v.ok, v.violations


@pytest.mark.parametrize("alpha", ["e", "golden", "sqrt2"])
def test_verification_on_irrationals(alpha):
    for n in (5, 17, 100, 1000, 4700, 20000):
        v = verify_prediction(n, alpha, greene=n <= 5000)
        assert v.ok, v.violations


def test_trivial_and_refused_inputs():
    with pytest.raises(TrivialShape) as info:
        shape_prediction(3, "e")
    assert info.value.partition == Partition((1, 1, 1))
    with pytest.raises(TrivialShape):
        shape_prediction(5, F(1, 7))
    with pytest.raises(DomainError):
        shape_prediction(10, F(3, 7))
    v = verify_prediction(4, F(1, 9))
    assert v.ok and v.prediction is None and v.max_dist is None


def test_normalized_extrema():
    Mp, mm, mp_, Mm = normalized_extrema("e", 3)
    assert f"{Mp:.4f}" == "1.4049" and f"{mp_:.4f}" == "0.7518"
    assert abs(Mp * mm - 2) < 1e-10 and abs(mp_ * Mm - 2) < 1e-10
    e = mpmath.e - 2
    for idx, (p, q) in ((6, (28, 39)), (7, (51, 71))):
        root = mpmath.sqrt(abs(e - mpmath.mpf(p) / q))
        want = 1 / (q * root) if idx == 6 else 2 * q * root
        got = Mp if idx == 6 else mp_
        assert abs(mpmath.mpf(str(got)) - want) < 1e-11


def test_lsvk_curve():
    pts = lsvk_curve(201)
    assert np.allclose(pts[100], [2 / np.pi, 2 / np.pi])
    assert np.allclose(pts[-1], [2, 0]) and np.allclose(pts[0], [0, 2])
    assert np.allclose(pts[::-1][:, ::-1], pts)
    with pytest.raises(DomainError):
        lsvk_curve(1)


def test_distance_against_dense_sampling():
    for n, alpha in ((210, F(25, 211)), (4700, "e"), (999, "golden")):
        lam = shape(sos_permutation(n, alpha))
        pred = shape_prediction(n, alpha)
        got, _ = boundary_distance(lam, pred)
        stair = np.array(lam.staircase(), dtype=float)
        dense = np.concatenate([np.linspace(p, q, 400) for p, q in zip(stair, stair[1:])])
        xs = np.linspace(0, float(pred.domain[1]), 4000)
        ys = pred.L_array(xs)
        d = np.sqrt((xs[:, None] - dense[None, :, 0]) ** 2 + (ys[:, None] - dense[None, :, 1]) ** 2)
        assert abs(d.min(axis=1).max() - got) < 0.05
        assert got < 8
