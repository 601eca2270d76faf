import random
from itertools import combinations, product
from math import floor, log2

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hypercover.complexity import (
    AlgWitness,
    IndexWitness,
    algebraic_complexity,
    index_complexity_exact,
    index_complexity_greedy,
)
from hypercover.constructions import halfcube_set
from hypercover.hypercube import CubePoint, PointSet, layer
from hypercover.modp import nullspace, rank, rref, solve
from hypercover.polynomial import SparsePoly, parse_poly


def brute_index(strings):
    """(r, v, I) by trying |I| ascending, then I lexicographically, then v lexicographically."""
    n = len(strings[0])
    pts = sorted(strings)
    if len(pts) == 1:
        return 0, pts[0], ()
    for size in range(n + 1):
        for I in combinations(range(n), size):
            for v in pts:
                proj = tuple(v[i] for i in I)
                if all(tuple(s[i] for i in I) != proj for s in pts if s != v):
                    return size, v, I
    raise AssertionError


def example_11a(n):
    return PointSet(n, [m for m in range(1 << n) if m & 1])


def test_example_11a():
    for n in range(2, 8):
        r, w = index_complexity_exact(example_11a(n))
        assert r == n - 1 and w.check(example_11a(n))


def test_example_11b():
    for n in range(3, 11):
        r, w = index_complexity_exact(halfcube_set(n))
        assert r == 1 and w.check(halfcube_set(n))


def test_even_weight_q3():
    S = PointSet.from_strings(["000", "011", "101", "110"])
    r, w = index_complexity_exact(S)
    assert r == 2 == brute_index(S.to_json())[0]
    k, gw = index_complexity_greedy(S)
    assert k == 2 and gw.check(S)


def test_greedy_examples():
    k, w = index_complexity_greedy(PointSet.from_strings(["0101"]))
    assert k == 0 and w.I == ()
    k, w = index_complexity_greedy(PointSet.full(4))
    assert k <= 4 and w.check(PointSet.full(4))


def test_empty_set_rejected():
    with pytest.raises(ValueError):
        index_complexity_exact(PointSet(3))
    with pytest.raises(ValueError):
        index_complexity_greedy(PointSet(3))


point_sets = st.integers(1, 6).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.integers(0, 2**n - 1), min_size=1, max_size=24)))


@given(point_sets)
def test_exact_matches_brute_force(ns):
    n, masks = ns
    S = PointSet(n, masks)
    r, w = index_complexity_exact(S)
    br, bv, bI = brute_index(S.to_json())
    assert r == br
    assert (str(w.v), w.I) == (bv, bI)
    assert w.check(S)


@given(point_sets)
def test_exact_le_greedy_le_log(ns):
    n, masks = ns
    S = PointSet(n, masks)
    r, w = index_complexity_exact(S)
    k, gw = index_complexity_greedy(S)
    assert gw.check(S) and len(gw.I) == k
    assert r <= k <= floor(log2(len(S)))


def test_layer_index_bound():
    for n in range(2, 11):
        for k in range(n + 1):
            r, _ = index_complexity_exact(layer(n, k))
            assert r <= min(k, n - k)
            # witness from the layer lower-bound argument: first-k-ones point, I = first k coords
            if 0 < k <= n - k:
                w = IndexWitness(CubePoint(n, (1 << k) - 1), tuple(range(k)))
                assert w.check(layer(n, k))


def test_witness_check_rejects_bad_witnesses():
    S = PointSet.from_strings(["000", "011", "101", "110"])
    assert not IndexWitness(CubePoint.from_string("000"), (0,)).check(S)
    assert not IndexWitness(CubePoint.from_string("111"), (0, 1, 2)).check(S)


def test_witness_json_is_one_based():
    w = IndexWitness(CubePoint.from_string("100"), (0, 2))
    assert w.to_json() == {"v": "100", "I": [1, 3]}


# -- algebraic complexity ---------------------------------------------------


def reduced_monomials(n, p, d):
    return [e for e in product(range(p), repeat=n) if sum(e) <= d]


def brute_algebraic(S, p):
    """Smallest d such that some reduced polynomial of degree <= d isolates a point of S."""
    n = len(S[0])
    for d in range(n * (p - 1) + 1):
        mons = reduced_monomials(n, p, d)
        for coeffs in product(range(p), repeat=len(mons)):
            vals = []
            for pt in S:
                total = 0
                for c, e in zip(coeffs, mons):
                    if c:
                        term = c
                        for xi, k in zip(pt, e):
                            term *= pow(xi, k, p)
                        total += term
                vals.append(total % p)
            if sum(1 for v in vals if v) == 1:
                return d
    raise AssertionError


def nullity_algebraic(S, p):
    """Criterion: some v has a larger nullity on S minus v than on S."""
    n = len(S[0])
    for d in range(n * (p - 1) + 1):
        mons = reduced_monomials(n, p, d)

        def evals(pts):
            return np.array([[int(np.prod([pow(x, k, p) for x, k in zip(pt, e)])) % p for e in mons]
                             for pt in pts], dtype=np.int64).reshape(len(pts), len(mons))

        full = len(mons) - rank(evals(S), p)
        for v in S:
            rest = [u for u in S if u != v]
            if len(mons) - rank(evals(rest), p) > full:
                return d
    raise AssertionError


def test_algebraic_examples():
    a, w = algebraic_complexity([(1, 0, 2)], 5)
    assert a == 0 and w.check([(1, 0, 2)])

    S = [(0,), (1,)]
    a, w = algebraic_complexity(S, 3)
    assert a == 1 and w.check(S)
    # the polynomial x also certifies degree 1 (nonzero only at 1)
    assert AlgWitness(parse_poly("x1", p=3), (1,), 1).check(S)

    Q = [tuple(int(c) for c in s) for s in layer(4, 2).to_json()]
    a, w = algebraic_complexity(Q, 5)
    assert a == 2 and w.check(Q)
    assert AlgWitness(parse_poly("x1*x2", n=4, p=5), (1, 1, 0, 0), 2).check(Q)
    assert nullity_algebraic(Q, 5) == 2


def test_algebraic_rejects_composite():
    with pytest.raises(ValueError):
        algebraic_complexity([(0,), (1,)], 4)


@settings(max_examples=25)
@given(st.sampled_from([2, 3]).flatmap(lambda p: st.tuples(
    st.just(p),
    st.integers(1, 2).flatmap(lambda n: st.sets(
        st.tuples(*[st.integers(0, p - 1)] * n), min_size=1, max_size=p**n)))))
def test_algebraic_matches_exhaustive_search(pS):
    p, S = pS
    S = sorted(S)
    a, w = algebraic_complexity(S, p)
    assert w.check(S)
    assert a == brute_algebraic(S, p)


@settings(max_examples=25)
@given(st.sampled_from([5, 7]).flatmap(lambda p: st.tuples(
    st.just(p),
    st.integers(1, 3).flatmap(lambda n: st.sets(
        st.tuples(*[st.integers(0, p - 1)] * n), min_size=1, max_size=12)))))
def test_algebraic_matches_nullity_criterion(pS):
    p, S = pS
    S = sorted(S)
    a, w = algebraic_complexity(S, p)
    assert w.check(S)
    assert a == nullity_algebraic(S, p)


@settings(max_examples=30)
@given(st.sampled_from([3, 5]).flatmap(lambda p: st.tuples(
    st.just(p),
    st.sets(st.tuples(*[st.integers(0, p - 1)] * 3), min_size=1, max_size=15),
    st.permutations(range(3)))))
def test_algebraic_permutation_invariant(data):
    p, S, perm = data
    T = [tuple(pt[i] for i in perm) for pt in S]
    assert algebraic_complexity(S, p)[0] == algebraic_complexity(T, p)[0]


def test_algebraic_at_most_index_on_cube():
    # on the cube a product of r linear factors isolates the index witness
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randint(2, 5)
        masks = rng.sample(range(1 << n), rng.randint(2, min(10, 1 << n)))
        S = PointSet(n, masks)
        r, _ = index_complexity_exact(S)
        a, _ = algebraic_complexity([pt.coords() for pt in S], 5)
        assert a <= r


# -- linear algebra over Z_p -------------------------------------------------


@given(st.sampled_from([2, 3, 5, 7, 101]), st.integers(1, 5), st.integers(1, 5), st.data())
def test_rref_and_nullspace(p, rows, cols, data):
    A = np.array(data.draw(st.lists(st.lists(st.integers(0, p - 1), min_size=cols, max_size=cols),
                                    min_size=rows, max_size=rows)), dtype=np.int64)
    R, piv = rref(A, p)
    N = nullspace(A, p)
    assert N.shape == (cols - len(piv), cols)
    assert not ((A @ N.T) % p).any()
    assert rank(A, p) == len(piv)
    b = (A @ np.arange(cols)) % p
    xsol = solve(A, b, p)
    assert xsol is not None and ((A @ xsol - b) % p == 0).all()


def test_solve_inconsistent():
    A = np.array([[1, 1], [1, 1]])
    assert solve(A, np.array([0, 1]), 3) is None


def test_alg_witness_json():
    g = SparsePoly.variable(2, 0, 3)
    w = AlgWitness(g, (1, 0), 1)
    data = w.to_json()
    assert data["v"] == [1, 0] and data["degree"] == 1
