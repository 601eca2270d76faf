"""Prime-field checks: Nullstellensatz witnesses, restricted sumsets and
the generalized Chevalley-Warning search.

All searches scan points in lexicographic order (first coordinate most
significant, each coordinate set sorted ascending) and report the first hit.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, factorial, prod
from typing import Iterable, Sequence

import numpy as np

from .complexity import algebraic_complexity
from .modp import check_prime
from .polynomial import SparsePoly, multinomial

MAX_FIELD_PRIME = 10**4
MAX_SCAN = 10**7
MAX_EH_PRIME = 101
_CHUNK = 1 << 16


class HypothesisError(ValueError):
    """The inputs do not satisfy a theorem's hypotheses."""


@dataclass(frozen=True)
class FieldSpec:
    p: int

    def __post_init__(self) -> None:
        if not 2 <= self.p <= MAX_FIELD_PRIME:
            raise ValueError(f"prime must be in [2, {MAX_FIELD_PRIME}], got {self.p}")
        check_prime(self.p)

    @property
    def q(self) -> int:
        return self.p


@dataclass(frozen=True)
class GridSpec:
    """Coordinate sets S_1..S_n in Z_p with per-variable degrees t_1..t_n."""

    p: int
    sets: tuple[tuple[int, ...], ...]
    degrees: tuple[int, ...]

    def __post_init__(self) -> None:
        FieldSpec(self.p)
        sets = tuple(tuple(sorted({int(x) % self.p for x in s})) for s in self.sets)
        if any(not s for s in sets):
            raise ValueError("grid coordinate sets must be nonempty")
        if len(self.degrees) != len(sets):
            raise ValueError(f"{len(self.degrees)} degrees for {len(sets)} coordinate sets")
        if any(t < 0 for t in self.degrees):
            raise ValueError("degrees must be non-negative")
        object.__setattr__(self, "sets", sets)
        object.__setattr__(self, "degrees", tuple(int(t) for t in self.degrees))

    @property
    def n(self) -> int:
        return len(self.sets)

    @property
    def size(self) -> int:
        return prod(len(s) for s in self.sets)


# -- vectorized evaluation ------------------------------------------------


def eval_points(f: SparsePoly, pts: np.ndarray) -> np.ndarray:
    """Values of ``f`` over Z_p at every row of ``pts``."""
    p = f.p
    if p is None:
        raise ValueError("vectorized evaluation is for Z_p polynomials")
    out = np.zeros(pts.shape[0], dtype=np.int64)
    powers: dict[tuple[int, int], np.ndarray] = {}
    for e, c in f.terms.items():
        v = np.full(pts.shape[0], c, dtype=np.int64)
        for i, k in enumerate(e):
            if k:
                key = (i, k)
                if key not in powers:
                    col = pts[:, i] % p
                    acc = np.ones_like(col)
                    for _ in range(k):
                        acc = acc * col % p
                    powers[key] = acc
                v = v * powers[key] % p
        out = (out + v) % p
    return out


def _grid_block(sets: Sequence[Sequence[int]], start: int, stop: int) -> np.ndarray:
    """Rows ``start..stop-1`` of the grid in lexicographic order."""
    dims = [len(s) for s in sets]
    flat = np.arange(start, stop, dtype=np.int64)
    idx = np.unravel_index(flat, dims)
    return np.stack([np.asarray(s, dtype=np.int64)[ix] for s, ix in zip(sets, idx)], axis=1)


def _first_hit(polys: list[SparsePoly], sets, start: int, stop: int, want_zero: bool,
               skip: frozenset = frozenset()) -> int | None:
    """Flat index of the first grid point in ``[start, stop)`` that qualifies.

    ``want_zero``: all ``polys`` vanish there (and the point is not in ``skip``);
    otherwise: the single polynomial is nonzero there.
    """
    for lo in range(start, stop, _CHUNK):
        hi = min(stop, lo + _CHUNK)
        pts = _grid_block(sets, lo, hi)
        if want_zero:
            ok = np.ones(hi - lo, dtype=bool)
            for f in polys:
                ok &= eval_points(f, pts) == 0
        else:
            ok = eval_points(polys[0], pts) != 0
        for j in np.nonzero(ok)[0]:
            if not skip or tuple(int(x) for x in pts[j]) not in skip:
                return lo + int(j)
    return None


def _scan(polys, sets, want_zero: bool, skip: frozenset = frozenset(), workers: int = 1) -> tuple[int, ...] | None:
    total = prod(len(s) for s in sets)
    if workers <= 1 or total < 4 * _CHUNK:
        hit = _first_hit(polys, sets, 0, total, want_zero, skip)
    else:
        bounds = np.linspace(0, total, workers + 1, dtype=np.int64).tolist()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_first_hit, polys, sets, lo, hi, want_zero, skip)
                       for lo, hi in zip(bounds[:-1], bounds[1:])]
            hits = [fu.result() for fu in futures]
        # each worker reports its own first hit; the global first is the minimum
        found = [h for h in hits if h is not None]
        hit = min(found) if found else None
    if hit is None:
        return None
    return tuple(int(x) for x in _grid_block(sets, hit, hit + 1)[0])


# -- Combinatorial Nullstellensatz ---------------------------------------


def cn_hypotheses(f: SparsePoly, grid: GridSpec) -> list[str]:
    """Failed hypotheses of the Nullstellensatz for ``f`` on ``grid`` (empty if all hold)."""
    problems = []
    if f.p != grid.p:
        problems.append(f"f is over {f.domain}, grid is over Z_{grid.p}")
        return problems
    if f.n != grid.n:
        problems.append(f"f has {f.n} variables, grid has {grid.n} coordinates")
        return problems
    if f.is_zero():
        problems.append("f is the zero polynomial")
        return problems
    if f.degree != sum(grid.degrees):
        problems.append(f"deg f = {f.degree} differs from sum of degrees {sum(grid.degrees)}")
    if f.coefficient_of(grid.degrees) == 0:
        problems.append(f"coefficient of x^{list(grid.degrees)} in f is zero")
    for i, (s, t) in enumerate(zip(grid.sets, grid.degrees)):
        if len(s) <= t:
            problems.append(f"|S_{i + 1}| = {len(s)} is not larger than t_{i + 1} = {t}")
    return problems


def cn_witness(f: SparsePoly, grid: GridSpec, workers: int = 1) -> tuple[int, ...]:
    """Lexicographically first grid point where ``f`` does not vanish."""
    problems = cn_hypotheses(f, grid)
    if problems:
        raise HypothesisError("; ".join(problems))
    if grid.size > MAX_SCAN:
        raise ValueError(f"grid has {grid.size} points, cap is {MAX_SCAN}")
    hit = _scan([f], grid.sets, want_zero=False, workers=workers)
    if hit is None:
        raise RuntimeError("grid exhausted with all hypotheses verified: arithmetic bug")
    return hit


# -- coefficient claims ---------------------------------------------------


def _mul_capped(f: SparsePoly, g: SparsePoly, cap: Sequence[int]) -> SparsePoly:
    """Product keeping only exponents bounded by ``cap``; exact below the cap."""
    p = f.p
    terms: dict = {}
    for e1, c1 in f.terms.items():
        for e2, c2 in g.terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            if any(x > c for x, c in zip(e, cap)):
                continue
            terms[e] = terms.get(e, 0) + c1 * c2
    return SparsePoly(f.n, terms, p)


def halfcube_poly_factors(n: int, p: int) -> list[SparsePoly]:
    """The n-1 affine factors: n x_1 + x_2 + ... + x_n - j for j < n-1, then x_2 + ... + x_n - (n-1)."""
    factors = [SparsePoly.linear((n,) + (1,) * (n - 1), j, p) for j in range(1, n - 1)]
    factors.append(SparsePoly.linear((0,) + (1,) * (n - 1), n - 1, p))
    return factors


def claim_coeff_closed_form(n: int, p: int) -> int:
    return (n - 1) ** 3 * factorial(n - 2) % p


def claim_coeff(n: int, p: int) -> int:
    """Coefficient of x_1 x_2 ... x_n in (x_1 + ... + x_n) h(x) over Z_p.

    Computed by multiplying out the factors (truncated to multilinear terms)
    and checked against (n-1)^3 (n-2)!.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    FieldSpec(p)
    if p <= n:
        raise ValueError(f"need p > n, got p={p}, n={n}")
    cap = (1,) * n
    acc = SparsePoly.linear((1,) * n, 0, p)
    for h in halfcube_poly_factors(n, p):
        acc = _mul_capped(acc, h, cap)
    got = acc.coefficient_of(cap)
    expected = claim_coeff_closed_form(n, p)
    if got != expected:
        raise AssertionError(f"expansion gives {got}, closed form gives {expected} (n={n}, p={p})")
    return got


def target_coefficient(front: SparsePoly, m: int, c: Sequence[int]) -> int:
    """Coefficient of prod x_i^{c_i} in ``front * (x_1 + ... + x_n)^m`` over Z_p.

    The power of the linear form is never expanded: each term of ``front``
    pairs with the single multinomial that completes it to ``c``.
    """
    p = front.p
    total = 0
    for e, coef in front.terms.items():
        rest = [ci - ei for ci, ei in zip(c, e)]
        if min(rest) < 0 or sum(rest) != m:
            continue
        total += coef * multinomial(m, rest)
    return total % p if p is not None else total


def anr_hypothesis(h: SparsePoly, sets: Sequence[Sequence[int]]) -> dict:
    """Hypothesis of the polynomial-restricted sumset bound (checked only).

    With |S_i| = c_i + 1 and m = sum c_i - deg h, reports the coefficient of
    prod x_i^{c_i} in (sum x_i)^m h(x) and whether it is nonzero.
    """
    if h.p is None:
        raise ValueError("h must be a Z_p polynomial")
    c = [len({x % h.p for x in s}) - 1 for s in sets]
    m = sum(c) - h.degree
    if m < 0:
        return {"m": m, "coefficient": None, "holds": False}
    coeff = target_coefficient(h, m, c)
    return {"m": m, "coefficient": coeff, "holds": coeff != 0, "bound": m + 1}


# -- restricted sumsets ---------------------------------------------------


def _sum_counts(A: Sequence[Sequence[int]], p: int) -> np.ndarray:
    """How many tuples of the product set hit each residue, by cyclic convolution."""
    counts = np.zeros(p, dtype=object)
    counts[0] = 1
    for Ai in A:
        nxt = np.zeros(p, dtype=object)
        for a in Ai:
            nxt += np.roll(counts, a % p)
        counts = nxt
    return counts


def restricted_sumset(A: Sequence[Sequence[int]], S: Iterable[Sequence[int]], p: int) -> set[int]:
    """{a_1 + ... + a_n mod p : (a_i) in A_1 x ... x A_n, (a_i) not in S}."""
    FieldSpec(p)
    A = [sorted({int(x) % p for x in Ai}) for Ai in A]
    if any(not Ai for Ai in A):
        raise ValueError("each A_i must be nonempty")
    if prod(len(Ai) for Ai in A) > MAX_SCAN:
        raise ValueError(f"product set exceeds {MAX_SCAN} tuples")
    members = [set(Ai) for Ai in A]
    counts = _sum_counts(A, p)
    for s in {tuple(int(x) % p for x in pt) for pt in S}:
        if len(s) != len(A) or any(x not in members[i] for i, x in enumerate(s)):
            raise ValueError(f"forbidden tuple {s} is not in the product set")
        counts[sum(s) % p] -= 1
    return {r for r in range(p) if counts[r] > 0}


@dataclass(frozen=True)
class SumsetInstance:
    """Sets A_i in Z_p, a forbidden set S inside their product, an exclusion
    polynomial g vanishing on all of S but one point, and a pivot variable k
    (1-based, as in x_k)."""

    p: int
    A: tuple[tuple[int, ...], ...]
    S: frozenset
    g: SparsePoly
    k: int

    def __post_init__(self) -> None:
        FieldSpec(self.p)
        A = tuple(tuple(sorted({int(x) % self.p for x in Ai})) for Ai in self.A)
        S = frozenset(tuple(int(x) % self.p for x in s) for s in self.S)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "S", S)
        n = len(A)
        if any(not Ai for Ai in A):
            raise ValueError("each A_i must be nonempty")
        if self.g.p != self.p or self.g.n != n:
            raise ValueError(f"g must be a polynomial in {n} variables over Z_{self.p}")
        if not 1 <= self.k <= n:
            raise ValueError(f"pivot k={self.k} outside [1, {n}]")
        members = [set(Ai) for Ai in A]
        for s in S:
            if len(s) != n or any(x not in members[i] for i, x in enumerate(s)):
                raise ValueError(f"forbidden tuple {s} is not in the product set")
        nonzero = [s for s in S if self.g.evaluate(s) != 0]
        if len(nonzero) != 1:
            raise HypothesisError(f"g must vanish on all of S except one point; "
                                  f"it is nonzero on {len(nonzero)} points")
        if self.m < 0:
            raise ValueError(f"m = sum(c_i) - deg(g) - 1 = {self.m} is negative; instance ill-formed")

    @property
    def n(self) -> int:
        return len(self.A)

    @property
    def c(self) -> tuple[int, ...]:
        return tuple(len(Ai) - 1 for Ai in self.A)

    @property
    def m(self) -> int:
        return sum(self.c) - self.g.degree - 1

    @property
    def v(self) -> tuple[int, ...]:
        return next(s for s in self.S if self.g.evaluate(s) != 0)

    @classmethod
    def from_json(cls, data: dict) -> SumsetInstance:
        from .polynomial import parse_poly

        p = int(data["p"])
        A = [tuple(Ai) for Ai in data["A"]]
        g = data["g"]
        if isinstance(g, dict):
            g = SparsePoly.from_json({**g, "p": p})
        else:
            g = parse_poly(str(g), n=len(A), p=p)
        return cls(p, tuple(A), frozenset(tuple(s) for s in data.get("S", [])), g, int(data["k"]))

    def to_json(self) -> dict:
        return {"p": self.p, "A": [list(Ai) for Ai in self.A],
                "S": sorted(list(s) for s in self.S), "g": self.g.to_text(), "k": self.k}


@dataclass(frozen=True)
class ResSumReport:
    m: int
    coefficient: int
    hypothesis: bool
    size: int | None = None
    holds: bool | None = None
    sumset: tuple[int, ...] | None = None
    note: str = ""

    def to_json(self) -> dict:
        return {"m": self.m, "coefficient": self.coefficient, "hypothesis": self.hypothesis,
                "bound": self.m + 1, "size": self.size, "holds": self.holds,
                "sumset": list(self.sumset) if self.sumset is not None else None,
                "note": self.note}


def res_sum_coefficient(inst: SumsetInstance) -> int:
    xk = SparsePoly.variable(inst.n, inst.k - 1, inst.p)
    return target_coefficient(xk * inst.g, inst.m, inst.c)


def check_res_sum_theorem(inst: SumsetInstance) -> ResSumReport:
    """Forbidden-set sumset bound |sumset| >= m + 1 under its coefficient hypothesis."""
    coeff = res_sum_coefficient(inst)
    if coeff == 0:
        return ResSumReport(inst.m, 0, False, note="hypothesis fails: theorem silent")
    sums = restricted_sumset(inst.A, inst.S, inst.p)
    holds = len(sums) >= inst.m + 1
    report = ResSumReport(inst.m, coeff, True, len(sums), holds, tuple(sorted(sums)))
    if not holds:
        raise AssertionError(f"sumset of size {len(sums)} below proven bound {inst.m + 1}: arithmetic bug")
    return report


def halfcube_sumset_instance(n: int, p: int) -> SumsetInstance:
    """A_i = {0,1}, S = zero set of the half-cube polynomial on the cube, g = x_1, k = 2."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    S = []
    for bits in range(1 << n):
        u = tuple((bits >> i) & 1 for i in range(n))
        if (u[0] == 0 and any(u[1:])) or all(u):
            S.append(u)
    return SumsetInstance(p, ((0, 1),) * n, frozenset(S), SparsePoly.variable(n, 0, p), 2)


# -- Erdos-Heilbronn -------------------------------------------------------


def eh_closed_form(size: int) -> int:
    """C(2q-2, q-1) - C(2q-2, q) with q = size - 1."""
    q = size - 1
    return comb(2 * q - 2, q - 1) - comb(2 * q - 2, q)


@dataclass(frozen=True)
class EHReport:
    p: int
    size: int
    sums: int
    bound: int
    holds: bool
    res_sum: ResSumReport | None = None
    closed_form: int | None = None

    def to_json(self) -> dict:
        return {"p": self.p, "size": self.size, "sums": self.sums, "bound": self.bound,
                "holds": self.holds,
                "res_sum": self.res_sum.to_json() if self.res_sum else None,
                "closed_form": self.closed_form}


def erdos_heilbronn_check(p: int, A: Iterable[int]) -> EHReport:
    """|{a + a' : a != a'}| >= min{p, 2|A| - 3}, with the forbidden-set route as a cross-check."""
    FieldSpec(p)
    if p > MAX_EH_PRIME:
        raise ValueError(f"prime must be at most {MAX_EH_PRIME}, got {p}")
    A = sorted({int(a) % p for a in A})
    if not A:
        raise ValueError("A must be nonempty")
    sums = {(a + b) % p for a, b in combinations(A, 2)}
    bound = min(p, 2 * len(A) - 3)
    holds = len(sums) >= bound
    if not holds:
        raise AssertionError(f"|A^A| = {len(sums)} < {bound} for p={p}, A={A}: arithmetic bug")
    res = None
    closed = None
    if 2 * len(A) - 3 < p and len(A) >= 2:
        a1, a2 = A[0], A[1]
        S = {(a, a) for a in A} | {(a1, a2)}
        g = SparsePoly.linear((1, -1), 0, p)
        inst = SumsetInstance(p, (tuple(A), tuple(A)), frozenset(S), g, 2)
        res = check_res_sum_theorem(inst)
        closed = eh_closed_form(len(A)) % p
        if res.coefficient != closed:
            raise AssertionError(f"coefficient {res.coefficient} differs from closed form {closed}")
        if res.hypothesis and res.size != len(sums):
            raise AssertionError("forbidden-set sumset differs from the distinct-sum set")
    return EHReport(p, len(A), len(sums), bound, holds, res, closed)


# -- generalized Chevalley-Warning ---------------------------------------


@dataclass(frozen=True)
class CWReport:
    status: str
    r: int
    degree_sum: int
    threshold: Fraction
    point: tuple[int, ...] | None = None
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"status": self.status, "r": self.r, "degree_sum": self.degree_sum,
                "threshold": str(self.threshold),
                "point": list(self.point) if self.point is not None else None,
                "alg_witness": self.witness}


def cw_generalized_search(polys: Sequence[SparsePoly], T: Iterable[Sequence[int]],
                          workers: int = 1) -> CWReport:
    """Find a common zero of ``polys`` outside ``T``.

    ``T`` must consist of common zeros.  With r the algebraic complexity of T
    the degree hypothesis is sum(deg P_i) < n - r/(p-1); only when it holds is
    the space searched, and then a hit is guaranteed.
    """
    polys = list(polys)
    if not polys:
        raise ValueError("need at least one polynomial")
    p, n = polys[0].p, polys[0].n
    if p is None:
        raise ValueError("polynomials must be over Z_p")
    FieldSpec(p)
    for f in polys:
        polys[0]._check(f)
    if p**n > MAX_SCAN:
        raise ValueError(f"p^n = {p ** n} exceeds the scan cap {MAX_SCAN}")
    T = sorted({tuple(int(x) % p for x in pt) for pt in T})
    if not T:
        raise ValueError("T must be nonempty")
    for pt in T:
        if len(pt) != n:
            raise ValueError(f"point {pt} has {len(pt)} coordinates, expected {n}")
        if any(f.evaluate(pt) != 0 for f in polys):
            raise HypothesisError(f"T is not inside the common zero set: {pt}")
    r, w = algebraic_complexity(T, p)
    # a zero polynomial imposes nothing and contributes degree 0
    degree_sum = sum(int(f.degree) if not f.is_zero() else 0 for f in polys)
    threshold = n - Fraction(r, p - 1)
    if not degree_sum < threshold:
        return CWReport("hypothesis fails", r, degree_sum, threshold, None, w.to_json())
    hit = _scan(polys, [tuple(range(p))] * n, want_zero=True, skip=frozenset(T), workers=workers)
    if hit is None:
        raise RuntimeError("search exhausted with the degree hypothesis verified: arithmetic bug")
    return CWReport("found", r, degree_sum, threshold, hit, w.to_json())
