from fractions import Fraction
from itertools import product as cartesian

import pytest
from hypothesis import given, strategies as st

from hypercover.constructions import halfcube_example_cover, layer_complement_cover, level_plane
from hypercover.cover import CoverFamily, Hyperplane, profile
from hypercover.hypercube import CubePoint, PointSet, layer
from hypercover.polycheck import (
    BoundViolation,
    check_degree_certificates,
    check_grid_theorem,
    from_family,
    multiplicity_profile,
    verify_poly_cover,
    zero_multiplicity,
)
from hypercover.polynomial import SparsePoly, parse_poly, product


def taylor_order(P, coords, cap):
    """Multiplicity via the shifted polynomial: lowest total degree of P(x + v)."""
    Q = P.translate(coords)
    if Q.is_zero():
        return cap
    return min(int(Q.min_degree()), cap)


def test_from_family_examples():
    F = CoverFamily.of(2, [Hyperplane((1, 0), 0), Hyperplane((1, 0), 1)])
    P = from_family(F)
    assert P == parse_poly("x1^2 - x1", n=2)
    assert P.degree == 2
    assert from_family(layer_complement_cover(4, 2, 1)).degree == 2
    assert from_family(layer_complement_cover(4, 2, 2)).degree == 4


def test_zero_multiplicity_examples():
    P = parse_poly("x1^2*x2^3")
    cert = zero_multiplicity(P, CubePoint.from_string("00"), 8)
    assert cert.order == 5
    assert sum(cert.witness) == 5 and P.derivative(cert.witness).evaluate((0, 0)) != 0

    P = from_family(layer_complement_cover(4, 2, 2))
    assert zero_multiplicity(P, CubePoint.from_string("1100")).order == 1

    one = SparsePoly.constant(3, 1)
    assert zero_multiplicity(one, CubePoint.from_string("101")).order == 0


def test_zero_multiplicity_caps():
    Z = SparsePoly.zero(2)
    cert = zero_multiplicity(Z, CubePoint.from_string("00"), 4)
    assert cert.order == 4 and cert.witness is None
    with pytest.raises(ValueError):
        zero_multiplicity(parse_poly("x1", p=5), CubePoint.from_string("0"))
    with pytest.raises(ValueError):
        zero_multiplicity(parse_poly("x1"), CubePoint.from_string("0"), 9)


@st.composite
def small_polys(draw):
    n = draw(st.integers(1, 4))
    terms = {}
    for _ in range(draw(st.integers(0, 6))):
        e = tuple(draw(st.lists(st.integers(0, 4), min_size=n, max_size=n)))
        if sum(e) <= 6:
            terms[e] = draw(st.integers(-4, 4))
    return SparsePoly(n, terms)


@given(small_polys(), st.data())
def test_multiplicity_matches_taylor_shift(P, data):
    m = data.draw(st.integers(0, 2**P.n - 1))
    pt = CubePoint(P.n, m)
    cap = data.draw(st.integers(1, 8))
    assert zero_multiplicity(P, pt, cap).order == taylor_order(P, pt.coords(), cap)


@given(small_polys())
def test_multiplicity_with_rational_coefficients(P):
    Q = P.scale(Fraction(2, 7))
    pt = CubePoint(P.n, 2**P.n - 1)
    assert zero_multiplicity(Q, pt).order == zero_multiplicity(P, pt).order


plane_lists = st.integers(2, 6).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.tuples(st.lists(st.integers(-3, 3), min_size=n, max_size=n).filter(any),
                           st.integers(-3, 3)), max_size=5),
        st.lists(st.tuples(st.lists(st.integers(-3, 3), min_size=n, max_size=n).filter(any),
                           st.integers(-3, 3)), max_size=4),
    )
)


def _fam(n, raw):
    return CoverFamily.of(n, [Hyperplane(tuple(a), b) for a, b in raw])


@given(plane_lists)
def test_from_family_multiplicity_equals_profile(data):
    n, raw, _ = data
    F = _fam(n, raw)
    orders = multiplicity_profile(from_family(F), 8)
    counts = profile(F).counts
    assert [min(int(c), 8) for c in counts] == [int(o) for o in orders]


@given(plane_lists)
def test_multiplicity_product_rule(data):
    n, raw1, raw2 = data
    P, Q = from_family(_fam(n, raw1)), from_family(_fam(n, raw2))
    for m in range(1 << n):
        pt = CubePoint(n, m)
        a = zero_multiplicity(P, pt).order
        b = zero_multiplicity(Q, pt).order
        if a + b <= 8:
            assert zero_multiplicity(P * Q, pt).order == a + b


def test_verify_poly_cover_examples():
    P = from_family(layer_complement_cover(7, 3, 1))
    assert verify_poly_cover(P, layer(7, 3), 1).ok

    P = from_family(layer_complement_cover(4, 1, 2))
    rep = verify_poly_cover(P, layer(4, 1), 2)
    assert rep.ok and rep.degree == 5 == max(1, 3) + 2

    P = parse_poly("x1", n=2)
    rep = verify_poly_cover(P, layer(2, 1), 1)
    assert not rep.ok
    # oracle: order by Taylor shift at every vertex
    expected = []
    for s in ("00", "01", "10", "11"):
        order = taylor_order(P, [int(c) for c in s], 1)
        need_exact = s.count("1") == 1
        if (need_exact and order != 0) or (not need_exact and order < 1):
            expected.append((s, order))
    assert [(str(v.point), v.order) for v in rep.violations] == expected == [("01", 1), ("11", 0)]


def test_verify_poly_cover_caps():
    with pytest.raises(ValueError):
        verify_poly_cover(parse_poly("x1", n=2), layer(2, 1), 7)
    with pytest.raises(ValueError):
        verify_poly_cover(parse_poly("x1", n=2, p=3), layer(2, 1), 1)


def test_certificate_examples():
    P = from_family(layer_complement_cover(7, 3, 1))
    rep = check_degree_certificates(P, layer(7, 3), 1, "layer")
    assert (rep.bound, rep.degree, rep.slack) == (4, 4, 0)

    F, S = halfcube_example_cover(5, 1)
    rep = check_degree_certificates(from_family(F), S, 1, "index")
    assert (rep.bound, rep.degree) == (4, 4)
    assert rep.detail["r"] == 1

    n = 5
    G = CoverFamily.of(n, [level_plane(n, j) for j in range(1, n + 1)])
    rep = check_degree_certificates(from_family(G), PointSet(n, [0]), 1, "sw")
    assert (rep.bound, rep.degree) == (n, n)

    rep = check_degree_certificates(from_family(layer_complement_cover(6, 2, 2)), layer(6, 2), 2, "size")
    assert rep.bound == 6 - 3 + 2 and rep.degree == 6


def test_certificate_precondition_failures():
    P = parse_poly("x1", n=2)
    with pytest.raises(ValueError):
        check_degree_certificates(P, layer(2, 1), 1, "layer")
    with pytest.raises(ValueError):
        check_degree_certificates(from_family(layer_complement_cover(3, 1, 1)), layer(3, 1), 1, "sw")
    with pytest.raises(ValueError):
        check_degree_certificates(P, layer(2, 1), 1, "bogus")


def test_bound_violation_is_an_assertion():
    assert issubclass(BoundViolation, AssertionError)


def _indicator(v):
    """Product of x_i or 1 - x_i: nonzero on the cube only at v."""
    n = len(v)
    one = SparsePoly.constant(n, 1)
    return product([SparsePoly.variable(n, i) if b else one - SparsePoly.variable(n, i)
                    for i, b in enumerate(v)], n)


def test_grid_examples():
    f = parse_poly("x1 - x2")
    g = SparsePoly.constant(2, 1)
    rep = check_grid_theorem(f, g, [(0, 0), (1, 1)], [[0, 1], [0, 1]])
    assert rep.failing == "i" and rep.holds is None

    for n in range(1, 6):
        v = tuple(1 if i % 2 == 0 else 0 for i in range(n))
        f = _indicator(v)
        rep = check_grid_theorem(f, SparsePoly.constant(n, 1), [v], [[0, 1]] * n)
        assert rep.failing is None and rep.holds
        assert rep.deg_f >= n == rep.bound


def test_grid_failing_clauses():
    f = _indicator((1, 1))
    g = SparsePoly.constant(2, 1)
    # (ii): T contains a zero of f
    rep = check_grid_theorem(f, g, [(1, 1), (0, 0)], [[0, 1], [0, 1]])
    assert rep.failing == "ii"
    # (iii): g vanishes on all of T
    rep = check_grid_theorem(f, SparsePoly.zero(2), [(1, 1)], [[0, 1], [0, 1]])
    assert rep.failing == "iii"


def test_grid_rejects_points_outside():
    with pytest.raises(ValueError):
        check_grid_theorem(parse_poly("x1"), parse_poly("x1"), [(2,)], [[0, 1]])


def test_grid_over_z_p():
    p = 5
    f = parse_poly("x1^4 - 1", p=p)  # nonzero exactly at 0 on Z_5
    g = SparsePoly.constant(1, 1, p)
    rep = check_grid_theorem(f, g, [(0,)], [list(range(p))])
    assert rep.failing is None and rep.bound == 4 and rep.deg_f == 4


def test_parallel_profile_is_deterministic():
    P = from_family(layer_complement_cover(8, 3, 2))
    a = multiplicity_profile(P, 3, workers=1)
    b = multiplicity_profile(P, 3, workers=2)
    assert a.tolist() == b.tolist()
    expected = [min(3, c) for c in profile(layer_complement_cover(8, 3, 2)).counts]
    assert a.tolist() == expected


def test_all_points_against_taylor_small():
    F = layer_complement_cover(4, 2, 3)
    P = from_family(F)
    for bits in cartesian((0, 1), repeat=4):
        pt = CubePoint.from_coords(bits)
        assert zero_multiplicity(P, pt).order == taylor_order(P, bits, 8)
