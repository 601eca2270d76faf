"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

The lines are collected and repeated in the terminal summary (see conftest),
so they show up even when output capture is on.  Random instances are drawn
from ``random.Random(seed)``; pass ``--seed`` to vary them.
"""

from itertools import combinations, product
from math import comb, factorial, floor, log2

from hypercover.complexity import algebraic_complexity, index_complexity_exact, index_complexity_greedy
from hypercover.constructions import (
    halfcube_example_cover,
    halfcube_set,
    layer_complement_cover,
    layer_minus_point_cover,
    tail_cover,
    venkitesh_counterexample,
)
from hypercover.cover import CoverFamily, profile, verify_cover
from hypercover.fieldkit import (
    GridSpec,
    claim_coeff,
    cn_hypotheses,
    cn_witness,
    cw_generalized_search,
    erdos_heilbronn_check,
)
from hypercover.hypercube import PointSet, layer, tail_set, weight_count
from hypercover.polycheck import check_degree_certificates, check_grid_theorem, from_family, verify_poly_cover
from hypercover.polynomial import SparsePoly, product as poly_product
from hypercover.search import enumerate_traces, min_cover_search

RESULTS: list[str] = []


def record(number: int, title: str, failures: list) -> None:
    line = f"criterion {number:>2} {'PASS' if not failures else 'FAIL'}  {title}"
    if failures:
        line += f"  ({len(failures)} failures, first: {failures[0]})"
    RESULTS.append(line)
    print(line)
    assert not failures, line


def lagrange(point, grid, p=None):
    """Product of (x_i - s) over s in S_i, s != point_i: nonzero on the grid only at ``point``."""
    n = len(grid)
    factors = [SparsePoly.linear([1 if j == i else 0 for j in range(n)], s, p)
               for i in range(n) for s in grid[i] if s != point[i]]
    return poly_product(factors, n, p)


def test_criterion_01_layer_cover_tightness():
    failures = []
    for n in range(2, 13):
        for k in range(n + 1):
            for t in range(1, 5):
                F = layer_complement_cover(n, k, t)
                if F.size != max(k, n - k) + 2 * t - 2 or not verify_cover(F, layer(n, k), t, t - 1).ok:
                    failures.append((n, k, t))
    record(1, "layer cover size max{k,n-k}+2t-2 and verified", failures)


def test_criterion_02_tail_traces():
    failures = []
    for n in range(2, 15):
        for ell in range(1, n // 2 + 1):
            if profile(tail_cover(n, ell)).covered() != tail_set(n, ell):
                failures.append((n, ell))
    record(2, "tail cover trace equals the tail set", failures)


def test_criterion_03_venkitesh():
    failures = []
    F, S = venkitesh_counterexample()
    if S != layer(7, 3).complement():
        failures.append("unexpected S")
    # the planes cover exactly S, so the avoided set is layer 3
    avoided = S.complement()
    if F.size != 4 or not verify_cover(F, avoided, 1, 0).ok or profile(F).covered() != S:
        failures.append("cover of size 4 not verified")
    if weight_count(S) - 2 != 5:
        failures.append(f"W(S)-2 = {weight_count(S) - 2}")
    planes = F.planes
    for i in range(len(planes)):
        sub = CoverFamily.of(7, planes[:i] + planes[i + 1:])
        if verify_cover(sub, avoided, 1, 0).ok:
            failures.append(f"subfamily without plane {i} still covers")
    record(3, "size-4 exact cover below W(S)-2 = 5, every plane needed", failures)


def test_criterion_04_polynomial_multiplicity():
    failures = []
    for n in range(2, 9):
        for k in range(n + 1):
            for t in range(1, 4):
                P = from_family(layer_complement_cover(n, k, t))
                rep = verify_poly_cover(P, layer(n, k), t)
                if not rep.ok or P.degree != max(k, n - k) + 2 * t - 2:
                    failures.append((n, k, t))
    record(4, "product polynomial has the right multiplicities and degree", failures)


def test_criterion_05_index_complexity(rng):
    failures = []
    for n in range(2, 9):
        S = PointSet(n, [m for m in range(1 << n) if m & 1])  # first coordinate 1
        r, w = index_complexity_exact(S)
        if r != n - 1 or not w.check(S):
            failures.append(("11a", n, r))
    for n in range(3, 9):
        S = halfcube_set(n)
        r, w = index_complexity_exact(S)
        if r != 1 or not w.check(S):
            failures.append(("11b", n, r))
    for _ in range(500):
        n = rng.randint(1, 10)
        size = rng.randint(2, min(64, 1 << n))
        S = PointSet(n, rng.sample(range(1 << n), size))
        r, w = index_complexity_exact(S)
        k, gw = index_complexity_greedy(S)
        if not (r <= k <= floor(log2(size)) and w.check(S) and gw.check(S) and len(gw.I) == k):
            failures.append(("random", S.to_json(), r, k))
    record(5, "exact and greedy index complexity", failures)


def test_criterion_06_halfcube():
    failures = []
    for n in range(3, 11):
        for t in range(1, 4):
            F, S = halfcube_example_cover(n, t)
            r, _ = index_complexity_exact(S)
            bound = n - r + 2 * t - 2
            if not verify_cover(F, S, t, t - 1).ok or F.size != n - 1 + 2 * (t - 1) or F.size - bound != 0:
                failures.append((n, t, F.size, bound))
            if n <= 7:
                cert = check_degree_certificates(from_family(F), S, t, "index")
                if cert.slack != 0:
                    failures.append((n, t, "polynomial slack", cert.slack))
    record(6, "half-cube cover meets n-r+2t-2 with slack 0", failures)


def _grid_instance(rng):
    """Random valid (f, g, T, grid) over Z_p (mostly) or Q."""
    over_q = rng.random() < 0.25
    n = rng.randint(1, 3)
    if over_q:
        p = None
        grid = [sorted(rng.sample(range(-4, 5), rng.randint(1, 4))) for _ in range(n)]
    else:
        p = rng.choice([2, 3, 5, 7])
        grid = [sorted(rng.sample(range(p), rng.randint(1, p))) for _ in range(n)]
    pts = list(product(*grid))
    T = rng.sample(pts, rng.randint(1, min(4, len(pts))))
    f = SparsePoly.zero(n, p)
    for v in T:
        c = rng.randint(1, (p or 7) - 1) if p else rng.choice([-3, -2, -1, 1, 2, 3])
        f = f + lagrange(v, grid, p).scale(c)
    # keep f nonzero on T: a single Lagrange term per point cannot cancel
    if p is not None:
        _, w = algebraic_complexity(sorted(T), p)
        g = w.g
    else:
        g = lagrange(rng.choice(T), grid, None) if len(T) > 1 else SparsePoly.constant(n, 1)
    return f, g, T, grid, pts, p


def test_criterion_07_grid_theorem(rng):
    failures = []
    done = 0
    while done < 200:
        f, g, T, grid, pts, p = _grid_instance(rng)
        rep = check_grid_theorem(f, g, T, grid)
        done += 1
        if rep.failing is not None or not rep.holds or f.degree + g.degree < sum(len(s) - 1 for s in grid):
            failures.append(("valid", f.to_text(), T, grid, rep.failing))
            continue
        # violations, each with its expected clause
        if len(T) >= 2:
            rep = check_grid_theorem(f, g, T[1:], grid)
            if rep.failing != "i":
                failures.append(("expected i", T, grid, rep.failing))
        outside = [u for u in pts if u not in T]
        if outside:
            rep = check_grid_theorem(f, g, T + [outside[0]], grid)
            if rep.failing != "ii":
                failures.append(("expected ii", T, grid, rep.failing))
        rep = check_grid_theorem(f, SparsePoly.zero(f.n, p), T, grid)
        if rep.failing != "iii":
            failures.append(("expected iii", T, grid, rep.failing))
    record(7, "grid degree bound on 200 instances, violations rejected", failures)


def test_criterion_08_nullstellensatz(rng):
    failures = []
    found = 0
    while found < 500:
        p = rng.choice([2, 3, 5, 7])
        n = rng.randint(1, 3)
        sets = [tuple(sorted(rng.sample(range(p), rng.randint(1, p)))) for _ in range(n)]
        degrees = tuple(rng.randint(0, len(s) - 1) for s in sets)
        top = sum(degrees)
        f = SparsePoly.monomial(degrees, rng.randint(1, p - 1), p)
        for _ in range(rng.randint(0, 5)):
            e = [rng.randint(0, top) for _ in range(n)]
            if sum(e) < top:
                f = f + SparsePoly.monomial(e, rng.randint(0, p - 1), p)
        grid = GridSpec(p, tuple(sets), degrees)
        if cn_hypotheses(f, grid):
            continue
        found += 1
        pt = cn_witness(f, grid)
        if pt is None or f.evaluate(pt) == 0 or any(x not in s for x, s in zip(pt, sets)):
            failures.append((f.to_text(), sets, degrees, pt))
    record(8, "Nullstellensatz witness on 500 instances", failures)


def test_criterion_09_claim_coefficient():
    failures = []
    primes = [q for q in range(2, 24) if all(q % d for d in range(2, q))]
    for n in range(3, 9):
        for p in [q for q in primes if q > n]:
            if claim_coeff(n, p) != (n - 1) ** 3 * factorial(n - 2) % p:
                failures.append((n, p))
    record(9, "claim coefficient equals (n-1)^3 (n-2)! mod p", failures)


def test_criterion_10_erdos_heilbronn():
    failures = []
    for p in (2, 3, 5, 7, 11, 13):
        for r in range(1, p + 1):
            for A in combinations(range(p), r):
                rep = erdos_heilbronn_check(p, A)
                distinct = {(a + b) % p for a, b in combinations(A, 2)}
                if len(distinct) < min(p, 2 * r - 3) or rep.sums != len(distinct):
                    failures.append((p, A))
                if rep.res_sum is not None and rep.res_sum.hypothesis:
                    if not rep.res_sum.holds or rep.res_sum.size != len(distinct):
                        failures.append((p, A, "forbidden-set route"))
    record(10, "Erdos-Heilbronn exhaustive for p <= 13", failures)


def test_criterion_11_chevalley_warning(rng):
    failures = []
    found = exhausted = 0
    while found < 100:
        p = rng.choice([2, 3, 5])
        n = rng.randint(1, 4)
        if n == 1:
            continue
        # degrees summing below n; every polynomial has zero constant term
        degs = []
        while sum(degs) < n - 1 and len(degs) < 3:
            degs.append(rng.randint(1, n - 1 - sum(degs)))
        polys = []
        for d in degs:
            f = SparsePoly.zero(n, p)
            for _ in range(rng.randint(1, 4)):
                e = [0] * n
                for _ in range(rng.randint(1, d)):
                    e[rng.randrange(n)] += 1
                f = f + SparsePoly.monomial(e, rng.randint(1, p - 1), p)
            polys.append(f)
        zeros = [u for u in product(range(p), repeat=n) if all(f.evaluate(u) == 0 for f in polys)]
        T = [zeros[0]] + rng.sample(zeros[1:], rng.randint(0, min(2, len(zeros) - 1)))
        try:
            rep = cw_generalized_search(polys, T)
        except RuntimeError:
            exhausted += 1
            failures.append(("exhausted", [f.to_text() for f in polys], T))
            continue
        if rep.status != "found":
            continue
        found += 1
        pt = rep.point
        if pt in T or any(f.evaluate(pt) != 0 for f in polys):
            failures.append(([f.to_text() for f in polys], T, pt))
    record(11, f"common zero outside T on 100 instances ({exhausted} exhausted)", failures)


def test_criterion_12_search_tightness():
    failures = []
    for n in (2, 3, 4):
        catalog = enumerate_traces(n, n + 1)
        for k in range(n + 1):
            res = min_cover_search(catalog, layer(n, k), 1, 0)
            if res.size != max(k, n - k):
                failures.append((n, k, res.size))
        origin = PointSet(n, [0])
        res = min_cover_search(catalog, origin, 1, 0)
        if res.size != n:
            failures.append((n, "origin", res.size))
    record(12, "search optimum equals max{k,n-k} (n for the origin)", failures)


def test_criterion_13_layer_minus_point():
    failures = []
    for n in range(2, 13):
        for k in range(n + 1):
            F, v = layer_minus_point_cover(n, k)
            Q = layer(n, k)
            covered = profile(F).covered()
            hit = [u for u in Q if u in covered]
            if (len(hit) != comb(n, k) - 1 or v not in Q or v in covered
                    or F.size != min(k, n - k)):
                failures.append((n, k))
    record(13, "layer minus one point with min{k,n-k} planes", failures)
