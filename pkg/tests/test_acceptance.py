"""Acceptance checks.  Each test prints one PASS/FAIL line, then asserts.

Run directly (``python3 tests/test_acceptance.py``) for the summary alone.
"""
import csv
import io
import itertools
import math
import random
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from sosshape.cli import RunConfig, run
from sosshape.lattice import lattice_dump, lattice_length, lattice_length_oracle, unit_vectors
from sosshape.numeric import convergent_table, parse_alpha, slow_euclid
from sosshape.predictor import (construct_k_paths, crossing_profile, rescaled_frame,
                                shape_prediction, verify_prediction)
from sosshape.schensted import greene_table, rsk, shape
from sosshape.sosperm import (check_three_gap, enumerate_sos, farey_neighbours, sos_permutation,
                              totient_sum)

F = Fraction
# perturbations of 51/71 by a Farey neighbour: (51K + c)/(71K + d) with 51d - 71c = +-1
K = 10007
SCAN_ALPHAS = {"e": "e", "golden": "golden", "sqrt2": "sqrt2",
               "51/71-": F(51 * K + 28, 71 * K + 39), "51/71+": F(51 * K + 23, 71 * K + 32)}

TABLE_51_71 = [
    (-1, 1, None, 71, 1, 0), (0, 1, None, 51, 0, 1), (1, 1, 1, 20, 1, -1),
    (2, 1, None, 31, -1, 2), (2, 2, 2, 11, -2, 3), (3, 1, 1, 9, 3, -4),
    (4, 1, 1, 2, -5, 7), (5, 1, None, 7, 8, -11), (5, 2, None, 5, 13, -18),
    (5, 3, None, 3, 18, -25), (5, 4, 4, 1, 23, -32), (6, 1, None, 1, -28, 39),
    (6, 2, 2, 0, -51, 71),
]


class _Emitter:
    def __init__(self, capsys=None):
        self.capsys = capsys

    def __call__(self, number: int, ok: bool, label: str, detail: str = ""):
        line = f"{'PASS' if ok else 'FAIL'}  [{number:2d}] {label}" + (f"  ({detail})" if detail else "")
        if self.capsys is not None:
            with self.capsys.disabled():
                print("\n" + line)
        else:
            print(line)


@pytest.fixture
def emit(capsys):
    return _Emitter(capsys)


def test_01_permutation_and_tableaux(emit):
    w = sos_permutation(7, F(3, 10))
    pair = rsk(w)
    ok = (str(w) == "7 4 1 5 2 6 3" and str(pair.shape) == "3,3,1"
          and pair.P == ((1, 2, 3), (4, 5, 6), (7,)) and pair.Q == ((1, 4, 6), (2, 5, 7), (3,)))
    best = math.inf
    for _ in range(50):
        t = time.perf_counter()
        rsk(sos_permutation(7, F(3, 10))).shape
        best = min(best, time.perf_counter() - t)
    ok = ok and best < 1e-3
    emit(1, ok, "w(7,3/10) = 7415263, shape 3,3,1, P/Q tableaux", f"{best * 1e3:.3f} ms")
    assert ok


def test_02_slow_euclid_rows(emit):
    fan = unit_vectors(51, 71)
    ok = (slow_euclid(51, 71).table() == TABLE_51_71
          and fan.U == [(1, 51), (2, 31), (3, 11), (7, 2), (39, 1)]
          and fan.V == [(1, -20), (4, -9), (11, -7), (18, -5), (25, -3), (32, -1)])
    emit(2, ok, "slow Euclid rows for (51,71), U (5 vectors), V (6 vectors)")
    assert ok


def test_03_lattice_lengths(emit):
    t = time.perf_counter()
    at_point = lattice_length(51, 71, (30, 39))
    dump = lattice_dump(51, 71)
    oracle = lattice_length_oracle(51, 71)
    full = all(oracle[(x, y)] == (lp, lm) for x, y, lp, lm in dump)
    frame_values = (lattice_length(51, 71, (71, 71))[0], lattice_length(51, 71, (71, 0))[1])
    elapsed = time.perf_counter() - t
    ok = at_point == (7, 4) and full and frame_values == (13, 9) and elapsed < 0.1
    emit(3, ok, "lattice_length(51,71,(30,39)) = (7,4); labelling = DP oracle; 13 and 9",
         f"(30,39) -> {at_point}, oracle agreement {full}, {frame_values}, {elapsed * 1e3:.1f} ms")
    assert ok


def test_04_exact_boundary(emit):
    p = shape_prediction(210, F(25, 211))
    (c1, m1), (c2, m2) = p.pieces
    ok = ((c1, m1, c2, m2) == (F(4217, 211), F(-102, 211), F(1999, 88), F(-211, 176))
          and p.x0 == F(622, 163) and p.domain[1] == F(3998, 211))
    emit(4, ok, "L for (210, 25/211) has exact coefficients, breakpoint and endpoint",
         f"{c1} {m1}x | {c2} {m2}x on [0,{p.x0}],[{p.x0},{p.domain[1]}]")
    assert ok


def test_05_e_example(emit):
    v = verify_prediction(4700, "e")
    s1, s2 = (f"{float(s):.5f}" for s in v.prediction.slopes)
    ok = (s1, s2) == ("-1.01332", "-3.53850") and v.max_dist < 8
    emit(5, ok, "alpha = e, n = 4700: slopes -1.01332, -3.53850; distance < 8",
         f"{s1}, {s2}, observed distance {v.max_dist:.4f}")
    assert ok


def _log_spaced(count, top):
    return sorted({int(round(v)) for v in np.logspace(1, math.log2(top), count, base=2)})


def test_06_bound_scan(emit):
    ns = _log_spaced(200, 10 ** 5)
    t = time.perf_counter()
    bad, worst_dist, worst_dev, points = [], 0.0, F(0), 0
    for name, alpha in SCAN_ALPHAS.items():
        for n in ns:
            v = verify_prediction(n, alpha)
            points += 1
            if not v.ok:
                bad.append((name, n, v.violations))
            if v.max_dist is not None:
                worst_dist = max(worst_dist, v.max_dist)
            worst_dev = max(worst_dev, v.worst_row, v.worst_col)
    elapsed = time.perf_counter() - t
    ok = not bad and elapsed < 600
    emit(6, ok, "arm/leg, row/column and distance bounds over the scan",
         f"{points} points, {len(bad)} violations, max distance {worst_dist:.3f}, "
         f"max deviation {float(worst_dev):.3f}, {elapsed:.0f} s")
    assert ok, bad[:5]


def test_07_greene(emit):
    mismatches = 0
    for vals in itertools.permutations(range(1, 9)):
        inc, _ = greene_table(vals)
        sums = shape(vals).prefix_sums()
        if inc[1:len(sums) + 1] != sums:
            mismatches += 1
    rng = random.Random(7)
    families = {n: enumerate_sos(n) for n in range(1, 13)}
    for _ in range(500):
        n = rng.randint(1, 12)
        _, w = rng.choice(families[n])
        inc, dec = greene_table(w)
        lam = shape(w)
        if inc[1:len(lam) + 1] != lam.prefix_sums() or dec[1:lam[0] + 1] != lam.conjugate().prefix_sums():
            mismatches += 1
    ok = mismatches == 0
    emit(7, ok, "Greene oracle = shape prefix sums on S_8 and 500 Sos permutations",
         f"{mismatches} mismatches")
    assert ok


def test_08_counting(emit):
    bad_count = bad_gap = 0
    total = 0
    for n in range(1, 301):
        rows = enumerate_sos(n)
        total += len(rows)
        if len(rows) != totient_sum(n) or len({w.values for _, w in rows}) != len(rows):
            bad_count += 1
        bad_gap += sum(1 for iv, w in rows if not check_three_gap(w, iv))
    probs = all(sum((iv.width for iv in farey_neighbours(n)), F(0)) == 1 for n in range(1, 301))
    ok = bad_count == 0 and bad_gap == 0 and probs
    emit(8, ok, "|Sos_n| = sum phi(k), three-gap rule, probabilities sum to 1 (n <= 300)",
         f"{total} permutations, {bad_count} count errors, {bad_gap} three-gap failures")
    assert ok


def test_09_certificates(emit):
    rng = random.Random(9)
    frames, problems, checked = 0, [], 0
    while frames < 50:
        n = rng.randint(10, 3000)
        N = rng.randint(n + 1, 3 * n)
        a = rng.randint(1, N - 1)
        if math.gcd(a, N) != 1:
            continue
        fr = rescaled_frame(n, F(a, N))
        frames += 1
        sums = shape(sos_permutation(n, F(a, N))).prefix_sums()
        prof = crossing_profile(fr)
        for k in range(1, prof.l(prof.J0) + 1):
            cert = construct_k_paths(fr, k)
            checked += 1
            Ik = sums[min(k, len(sums)) - 1]
            if not cert.ok or cert.size < cert.greene_bound - 3 or cert.permutation_points > Ik:
                problems.append((n, a, N, k, cert.problems))
    ok = not problems
    emit(9, ok, "k-path certificates on 50 random frames, all feasible k",
         f"{checked} certificates, {len(problems)} problems")
    assert ok, problems[:3]


def _extrema(values):
    """Indices of interior local maxima and minima."""
    maxima, minima = [], []
    for i in range(1, len(values) - 1):
        if values[i] > values[i - 1] and values[i] >= values[i + 1]:
            maxima.append(i)
        if values[i] < values[i - 1] and values[i] <= values[i + 1]:
            minima.append(i)
    return maxima, minima


def test_10_armleg_extrema(emit):
    out = io.StringIO()
    code = run(RunConfig("scan", alpha="e", n_log2_from=1, n_log2_to=20), stdout=out)
    rows = list(csv.DictReader(io.StringIO(out.getvalue())))
    exps = [round(math.log2(int(r["n"]))) for r in rows]
    arm = [int(r["arm"]) / math.sqrt(int(r["n"])) for r in rows]
    leg = [int(r["leg"]) / math.sqrt(int(r["n"])) for r in rows]
    table = convergent_table(parse_alpha("e"), depth=14)
    even = [round(math.log2(float(r.beta))) for r in table.rows if r.index % 2 == 0]
    odd = [round(math.log2(float(r.beta))) for r in table.rows if r.index % 2 == 1]
    near = lambda t, targets: any(abs(t - b) <= 1 for b in targets)
    arm_max, arm_min = _extrema(arm)
    leg_max, leg_min = _extrema(leg)
    checks = ([near(exps[i], even) for i in arm_max + leg_min]
              + [near(exps[i], odd) for i in arm_min + leg_max])
    ok = code == 0 and len(rows) == 20 and all(checks) and len(checks) > 0
    emit(10, ok, "normalized arm/leg extrema over n = 2^1..2^20 sit at log2(beta_i) +- 1",
         f"arm max {[exps[i] for i in arm_max]}, arm min {[exps[i] for i in arm_min]}, "
         f"leg max {[exps[i] for i in leg_max]}, leg min {[exps[i] for i in leg_min]}")
    assert ok


if __name__ == "__main__":
    emitter = _Emitter()
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn(emitter)
            except AssertionError:
                failures += 1
    sys.exit(1 if failures else 0)
