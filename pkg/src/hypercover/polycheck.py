"""Zero multiplicities on the cube, polynomial covers and degree certificates."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product as cartesian
from math import comb, floor, log2, prod

import numpy as np

from .cover import CoverFamily
from .hypercube import CubePoint, PointSet, check_enum_n, lex_key
from .polynomial import NEG_INF, SparsePoly, common_denominator, product

MAX_MULT_CAP = 8
MAX_POLY_COVER_N = 20
MAX_POLY_COVER_T = 6
MAX_GRID_POINTS = 10**6
_INT64_SAFE = 1 << 62


def from_family(F: CoverFamily) -> SparsePoly:
    """Product of the affine forms ``<a, x> - b`` of the family, over Q."""
    return product((SparsePoly.linear(h.a, h.b) for h in F.planes), F.n)


@dataclass(frozen=True)
class MultiplicityCert:
    point: CubePoint
    order: int
    witness: tuple[int, ...] | None

    def to_json(self) -> dict:
        return {
            "point": str(self.point),
            "order": self.order,
            "witness": list(self.witness) if self.witness is not None else None,
        }


class _TermTable:
    """Exponent matrix and integer coefficients of a rational polynomial.

    Coefficients are scaled by the common denominator, which changes no zero
    pattern.  int64 is used only when every partial sum provably fits.
    """

    def __init__(self, P: SparsePoly, cap: int):
        if P.p is not None:
            raise ValueError("zero multiplicity is only defined here over the rationals")
        self.n = P.n
        keys = list(P.terms)
        self.E = np.array(keys, dtype=np.int64).reshape(len(keys), P.n)
        den = common_denominator(P)
        ints = [int(P.terms[e] * den) for e in keys]
        deg = int(self.E.sum(axis=1).max()) if keys else 0
        bound = sum(abs(c) for c in ints) * max(comb(deg, k) for k in range(min(cap, deg + 1)))
        dtype = np.int64 if bound < _INT64_SAFE else object
        self.C = np.array(ints, dtype=dtype)

    def order_at(self, mask: int, cap: int) -> tuple[int, tuple[int, ...] | None]:
        n = self.n
        if self.E.shape[0] == 0:
            # every derivative of the zero polynomial vanishes
            return cap, None
        zero_idx = [i for i in range(n) if not (mask >> i) & 1]
        one_idx = [i for i in range(n) if (mask >> i) & 1]
        zpart = self.E[:, zero_idx]
        zsum = zpart.sum(axis=1)
        rows = np.nonzero(zsum < cap)[0]
        if rows.size == 0:
            return cap, None
        # a derivative d^alpha at a point with p_i = 0 only sees terms whose
        # exponent on x_i equals alpha_i
        patterns, inverse = np.unique(zpart[rows], axis=0, return_inverse=True)
        inverse = np.asarray(inverse).reshape(-1)
        groups = []
        for g, pat in enumerate(patterns):
            sel = rows[inverse == g]
            Eo = self.E[np.ix_(sel, one_idx)] if one_idx else np.zeros((sel.size, 0), dtype=np.int64)
            bounds = Eo.max(axis=0).tolist() if one_idx else []
            groups.append((int(pat.sum()), tuple(int(x) for x in pat), Eo, self.C[sel], bounds))
        groups.sort(key=lambda g: (g[0], g[1]))
        for s in range(cap):
            for sz, pat, Eo, Cs, bounds in groups:
                if sz > s:
                    break
                for alpha_o in _compositions(s - sz, bounds):
                    w = Cs
                    for j, a in enumerate(alpha_o):
                        if a:
                            w = w * _binom_vec(Eo[:, j], a)
                    if w.sum() != 0:
                        alpha = [0] * n
                        for i, a in zip(zero_idx, pat):
                            alpha[i] = a
                        for i, a in zip(one_idx, alpha_o):
                            alpha[i] = a
                        return s, tuple(alpha)
        return cap, None


def _binom_vec(e: np.ndarray, a: int) -> np.ndarray:
    out = np.ones_like(e)
    for j in range(a):
        out = out * (e - j)
    return out // prod(range(1, a + 1))


def _compositions(total: int, bounds: list[int]):
    """Vectors v with 0 <= v_i <= bounds[i] and sum(v) == total, in a fixed order."""
    k = len(bounds)
    if k == 0:
        if total == 0:
            yield ()
        return
    suffix = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        suffix[i] = suffix[i + 1] + bounds[i]
    if total > suffix[0]:
        return
    vec = [0] * k

    def rec(i: int, left: int):
        if i == k - 1:
            if left <= bounds[i]:
                vec[i] = left
                yield tuple(vec)
            return
        lo = max(0, left - suffix[i + 1])
        for a in range(min(left, bounds[i]), lo - 1, -1):
            vec[i] = a
            yield from rec(i + 1, left - a)
        vec[i] = 0

    yield from rec(0, total)


def zero_multiplicity(P: SparsePoly, point: CubePoint, cap: int = MAX_MULT_CAP) -> MultiplicityCert:
    """Order of vanishing of ``P`` at a cube vertex, truncated at ``cap``.

    The order is the largest ``s <= cap`` such that every formal partial
    derivative of total order below ``s`` vanishes at the point.  When the
    order is below ``cap`` the certificate names a derivative of that order
    that does not vanish.
    """
    if not 0 <= cap <= MAX_MULT_CAP:
        raise ValueError(f"cap must be in [0, {MAX_MULT_CAP}], got {cap}")
    if point.n != P.n:
        raise ValueError(f"dimension mismatch: polynomial n={P.n}, point n={point.n}")
    order, witness = _TermTable(P, cap).order_at(point.bits, cap)
    return MultiplicityCert(point, order, witness)


def _orders_chunk(P: SparsePoly, masks: list[int], cap: int) -> list[int]:
    table = _TermTable(P, cap)
    return [table.order_at(m, cap)[0] for m in masks]


def multiplicity_profile(P: SparsePoly, cap: int, workers: int = 1) -> np.ndarray:
    """Truncated zero order at every vertex of the cube, indexed by bit pattern."""
    check_enum_n(P.n)
    masks = list(range(1 << P.n))
    if workers <= 1 or len(masks) < 64:
        return np.array(_orders_chunk(P, masks, cap), dtype=np.int64)
    chunks = [masks[i::workers] for i in range(workers)]
    out = np.zeros(len(masks), dtype=np.int64)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for chunk, orders in zip(chunks, pool.map(_orders_chunk, [P] * workers, chunks, [cap] * workers)):
            out[chunk] = orders
    return out


@dataclass(frozen=True)
class PolyViolation:
    point: CubePoint
    rule: str
    order: int

    def to_json(self) -> dict:
        return {"point": str(self.point), "rule": self.rule, "order": self.order}


@dataclass(frozen=True)
class PolyCoverReport:
    ok: bool
    violations: tuple[PolyViolation, ...]
    degree: int | float
    t: int

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "t": self.t,
            "degree": None if self.degree == NEG_INF else self.degree,
            "violations": [v.to_json() for v in self.violations],
        }


def verify_poly_cover(P: SparsePoly, S: PointSet, t: int, workers: int = 1) -> PolyCoverReport:
    """Check that ``P`` is a (t, t-1)-cover of the cube minus ``S``.

    Every vertex off ``S`` needs a zero of order at least ``t``; every vertex
    of ``S`` a zero of order exactly ``t - 1``.
    """
    if P.p is not None:
        raise ValueError("polynomial covers are checked over the rationals only")
    if S.n != P.n:
        raise ValueError(f"dimension mismatch: polynomial n={P.n}, set n={S.n}")
    if P.n > MAX_POLY_COVER_N:
        raise ValueError(f"polynomial cover check needs n <= {MAX_POLY_COVER_N}, got {P.n}")
    if not 1 <= t <= MAX_POLY_COVER_T:
        raise ValueError(f"t must be in [1, {MAX_POLY_COVER_T}], got {t}")
    orders = multiplicity_profile(P, t, workers)
    inside = S.indicator()
    bad = np.nonzero((inside & (orders != t - 1)) | (~inside & (orders < t)))[0]
    violations = []
    for m in sorted(bad.tolist(), key=lambda m: lex_key(m, P.n)):
        rule = f"exactly {t - 1}" if inside[m] else f"at least {t}"
        violations.append(PolyViolation(CubePoint(P.n, m), rule, int(orders[m])))
    return PolyCoverReport(not violations, tuple(violations), P.degree, t)


class BoundViolation(AssertionError):
    """A verified certificate beat a proven lower bound: an arithmetic bug."""

    def __init__(self, report):
        super().__init__(f"degree {report.degree} below proven bound {report.bound} ({report.mode})")
        self.report = report


@dataclass(frozen=True)
class CertificateReport:
    mode: str
    bound: int
    degree: int
    slack: int
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"mode": self.mode, "bound": self.bound, "degree": self.degree,
                "slack": self.slack, **self.detail}


CERT_MODES = ("layer", "index", "size", "sw")


def _layer_index(S: PointSet) -> int | None:
    weights = {m.bit_count() for m in S.masks}
    if len(weights) != 1:
        return None
    k = weights.pop()
    return k if len(S) == comb(S.n, k) else None


def check_degree_certificates(P: SparsePoly, S: PointSet, t: int, mode: str,
                              workers: int = 1) -> CertificateReport:
    """Compare ``deg(P)`` with the lower bound selected by ``mode``.

    ``layer``: S is a layer k, bound max{k, n-k} + 2t - 2.
    ``index``: bound n - r(S) + 2t - 2 with the exact index complexity.
    ``size``:  bound n - floor(log2 |S|) + 2t - 2.
    ``sw``:    S is a single vertex, bound n + 2t - 2.

    Raises :class:`BoundViolation` if the inequality fails, which can only
    mean a bug in the verifier or the arithmetic.
    """
    from .complexity import index_complexity_exact

    if mode not in CERT_MODES:
        raise ValueError(f"unknown mode {mode!r}; choose from {', '.join(CERT_MODES)}")
    cover = verify_poly_cover(P, S, t, workers)
    if not cover.ok:
        raise ValueError(f"P is not a ({t},{t - 1})-cover of the cube minus S "
                         f"({len(cover.violations)} violating points)")
    n = P.n
    detail: dict = {}
    if mode == "layer":
        k = _layer_index(S)
        if k is None:
            raise ValueError("mode 'layer' needs S to be a full layer")
        bound = max(k, n - k) + 2 * t - 2
        detail["k"] = k
    elif mode == "index":
        if len(S) < 2:
            raise ValueError("mode 'index' needs |S| >= 2")
        r, w = index_complexity_exact(S)
        bound = n - r + 2 * t - 2
        detail["r"] = r
        detail["witness"] = w.to_json() if w is not None else None
    elif mode == "size":
        if len(S) < 2:
            raise ValueError("mode 'size' needs |S| >= 2")
        bound = n - floor(log2(len(S))) + 2 * t - 2
        detail["size"] = len(S)
    else:
        if len(S) != 1:
            raise ValueError("mode 'sw' needs S to be a single vertex")
        bound = n + 2 * t - 2
    degree = P.degree
    report = CertificateReport(mode, bound, degree, degree - bound, detail)
    if degree < bound:
        raise BoundViolation(report)
    return report


# -- grid theorem --------------------------------------------------------


@dataclass(frozen=True)
class GridReport:
    hypotheses: dict
    failing: str | None
    deg_f: int | float
    deg_g: int | float
    bound: int
    holds: bool | None

    def to_json(self) -> dict:
        fix = lambda d: None if d == NEG_INF else d  # noqa: E731
        return {"hypotheses": self.hypotheses, "failing": self.failing,
                "deg_f": fix(self.deg_f), "deg_g": fix(self.deg_g),
                "bound": self.bound, "holds": self.holds}


def _norm_point(f: SparsePoly, pt) -> tuple:
    if f.p is None:
        return tuple(pt)
    return tuple(int(x) % f.p for x in pt)


def check_grid_theorem(f: SparsePoly, g: SparsePoly, T, grid) -> GridReport:
    """Exhaustively test the three grid hypotheses, then the degree inequality.

    (i) f vanishes on grid minus T, (ii) f vanishes nowhere on T,
    (iii) g vanishes on all of T but one point.  When all three hold,
    ``deg f + deg g >= sum(|S_i| - 1)`` must follow; a failure raises
    :class:`BoundViolation`.
    """
    f._check(g)
    n = f.n
    grid = [sorted(set(_norm_point(f, s))) for s in grid]
    if len(grid) != n:
        raise ValueError(f"grid has {len(grid)} factors, polynomials have {n} variables")
    if any(not s for s in grid):
        raise ValueError("grid factors must be nonempty")
    if prod(len(s) for s in grid) > MAX_GRID_POINTS:
        raise ValueError(f"grid has more than {MAX_GRID_POINTS} points")
    T = {_norm_point(f, pt) for pt in T}
    members = [set(s) for s in grid]
    if any(len(pt) != n or any(x not in members[i] for i, x in enumerate(pt)) for pt in T):
        raise ValueError("T must be a subset of the grid")
    bound = sum(len(s) - 1 for s in grid)
    hyp = {"i": True, "ii": True, "iii": True}
    for pt in cartesian(*grid):
        if pt not in T and f.evaluate(pt) != 0:
            hyp["i"] = False
            break
    hyp["ii"] = all(f.evaluate(pt) != 0 for pt in T)
    zeros_g = sum(1 for pt in T if g.evaluate(pt) == 0)
    hyp["iii"] = len(T) >= 1 and zeros_g == len(T) - 1
    failing = next((k for k in ("i", "ii", "iii") if not hyp[k]), None)
    if failing is not None:
        return GridReport(hyp, failing, f.degree, g.degree, bound, None)
    report = GridReport(hyp, None, f.degree, g.degree, bound, True)
    if f.degree + g.degree < bound:
        raise BoundViolation(CertificateReport("grid", bound, f.degree + g.degree,
                                               f.degree + g.degree - bound))
    return report
