"""Index complexity of cube subsets and algebraic complexity over Z_p.

Both quantities come with a witness whose defining property can be checked
independently of the search that produced it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import floor, log2
from typing import Iterable, Sequence

import numpy as np

from .hypercube import CubePoint, PointSet, lex_key, max_enum_n, mask_to_str
from .modp import check_prime
from .polycheck import _compositions
from .polynomial import SparsePoly

MAX_INDEX_SET = 1 << 20
MAX_ALG_PRIME = 101
MAX_ALG_SET = 2000
MAX_ALG_N = 8


@dataclass(frozen=True)
class IndexWitness:
    """A vertex ``v`` of S and coordinates ``I`` (zero-based) isolating it."""

    v: CubePoint
    I: tuple[int, ...]

    def check(self, S: PointSet) -> bool:
        if self.v not in S:
            return False
        imask = sum(1 << i for i in self.I)
        target = self.v.bits & imask
        return all((s & imask) != target for s in S.masks if s != self.v.bits)

    def to_json(self) -> dict:
        # coordinates reported 1-based, matching x_1..x_n
        return {"v": str(self.v), "I": [i + 1 for i in self.I]}


def _validate_index_input(S: PointSet) -> None:
    if len(S) == 0:
        raise ValueError("index complexity of the empty set is undefined")
    if len(S) > MAX_INDEX_SET:
        raise ValueError(f"|S| must be at most {MAX_INDEX_SET}, got {len(S)}")
    if S.n > max_enum_n():
        raise ValueError(f"index complexity needs n <= {max_enum_n()}, got {S.n}")


def index_complexity_greedy(S: PointSet) -> tuple[int, IndexWitness]:
    """Halving upper bound on r(S), at most floor(log2 |S|).

    Repeatedly split on the lowest coordinate where the current set is not
    constant and keep the strictly smaller half (the 0-half on ties).
    """
    _validate_index_input(S)
    cur = list(S.masks)
    chosen: list[int] = []
    while len(cur) > 1:
        i = next(i for i in range(S.n) if len({(m >> i) & 1 for m in cur}) == 2)
        ones = [m for m in cur if (m >> i) & 1]
        zeros = [m for m in cur if not (m >> i) & 1]
        cur = ones if len(ones) < len(zeros) else zeros
        chosen.append(i)
    w = IndexWitness(CubePoint(S.n, cur[0]), tuple(sorted(chosen)))
    return len(chosen), w


def index_complexity_exact(S: PointSet) -> tuple[int, IndexWitness | None]:
    """Exact r(S) by iterative deepening on |I|.

    Within one size, coordinate sets are tried in lexicographic order and the
    lexicographically first isolated vertex is returned.  The greedy bound
    caps the depth.
    """
    _validate_index_input(S)
    if len(S) == 1:
        (m,) = S.masks
        return 0, IndexWitness(CubePoint(S.n, m), ())
    k, greedy_w = index_complexity_greedy(S)
    masks = np.fromiter(S.masks, dtype=np.int64, count=len(S))
    keys = np.array([lex_key(int(m), S.n) for m in masks], dtype=np.int64)
    order = np.argsort(keys, kind="stable")
    masks = masks[order]
    for size in range(1, k + 1):
        for I in combinations(range(S.n), size):
            imask = sum(1 << i for i in I)
            _, inverse, counts = np.unique(masks & imask, return_inverse=True, return_counts=True)
            unique_rows = np.nonzero(counts[np.asarray(inverse).reshape(-1)] == 1)[0]
            if unique_rows.size:
                v = CubePoint(S.n, int(masks[unique_rows[0]]))
                return size, IndexWitness(v, I)
    # the greedy witness always works at depth k, so this is unreachable
    return k, greedy_w


# -- algebraic complexity -------------------------------------------------


@dataclass(frozen=True)
class AlgWitness:
    """``g`` vanishes on every point of S except ``v``."""

    g: SparsePoly
    v: tuple[int, ...]
    d: int

    def check(self, S: Iterable[Sequence[int]]) -> bool:
        p = self.g.p
        pts = {tuple(int(x) % p for x in pt) for pt in S}
        if self.v not in pts or self.g.evaluate(self.v) == 0:
            return False
        if any(self.g.evaluate(u) != 0 for u in pts if u != self.v):
            return False
        return self.g.degree == self.d or (self.d == 0 and self.g.degree == 0)

    def to_json(self) -> dict:
        return {"g": self.g.to_text(), "g_json": self.g.to_json(), "v": list(self.v), "degree": self.d}


def _monomials(n: int, d: int, p: int):
    return _compositions(d, [p - 1] * n)


def _eval_monomial(points: np.ndarray, e: tuple[int, ...], p: int) -> np.ndarray:
    col = np.ones(points.shape[0], dtype=np.int64)
    for i, k in enumerate(e):
        if k:
            col = col * pow_table(points[:, i], k, p) % p
    return col


def pow_table(x: np.ndarray, k: int, p: int) -> np.ndarray:
    out = np.ones_like(x)
    for _ in range(k):
        out = out * x % p
    return out


class _SpanTracker:
    """Fully reduced echelon basis of a growing column span over Z_p.

    ``T`` records each basis row as a combination of the accepted columns,
    so membership witnesses come for free.
    """

    def __init__(self, size: int, p: int):
        self.p = p
        self.size = size
        self.B = np.zeros((0, size), dtype=np.int64)
        self.T = np.zeros((0, 0), dtype=np.int64)
        self.pivots: list[int] = []
        self.accepted: list[tuple[int, ...]] = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, vec: np.ndarray, label: tuple[int, ...]) -> bool:
        p = self.p
        k = self.rank
        coeffs = vec[self.pivots] if k else np.zeros(0, dtype=np.int64)
        red = (vec - coeffs @ self.B) % p if k else vec % p
        nz = np.nonzero(red)[0]
        if nz.size == 0:
            return False
        # expression of red in terms of accepted columns, new column last
        expr = np.zeros(k + 1, dtype=np.int64)
        expr[k] = 1
        if k:
            expr[:k] = (-(coeffs @ self.T)) % p
        pc = int(nz[0])
        inv = pow(int(red[pc]), -1, p)
        red = red * inv % p
        expr = expr * inv % p
        T = np.concatenate([self.T, np.zeros((k, 1), dtype=np.int64)], axis=1)
        col = self.B[:, pc].copy()
        B = (self.B - np.outer(col, red)) % p
        T = (T - np.outer(col, expr)) % p
        self.B = np.vstack([B, red])
        self.T = np.vstack([T, expr])
        self.pivots.append(pc)
        self.accepted.append(label)
        return True

    def unit_members(self) -> dict[int, int]:
        """Map ``i -> basis row`` for every unit vector e_i inside the span."""
        out = {}
        for j, pc in enumerate(self.pivots):
            if np.count_nonzero(self.B[j]) == 1:
                out[pc] = j
        return out


def _normalize_points(S: Iterable[Sequence[int]], p: int) -> list[tuple[int, ...]]:
    pts = sorted({tuple(int(x) % p for x in pt) for pt in S})
    if not pts:
        raise ValueError("algebraic complexity of the empty set is undefined")
    n = len(pts[0])
    if any(len(pt) != n for pt in pts):
        raise ValueError("points have different dimensions")
    return pts


def algebraic_complexity(S: Iterable[Sequence[int]], p: int) -> tuple[int, AlgWitness]:
    """Least degree of a polynomial over Z_p vanishing on all of S but one point.

    Reduced polynomials (every exponent below p) suffice.  Degrees are tried
    in increasing order; at each degree the candidate points are those whose
    indicator vector lies in the span of the monomial evaluation columns,
    and the lexicographically first one is returned.
    """
    check_prime(p)
    if p > MAX_ALG_PRIME:
        raise ValueError(f"prime must be at most {MAX_ALG_PRIME}, got {p}")
    pts = _normalize_points(S, p)
    n = len(pts[0])
    if n > MAX_ALG_N:
        raise ValueError(f"algebraic complexity needs n <= {MAX_ALG_N}, got {n}")
    if len(pts) > MAX_ALG_SET:
        raise ValueError(f"|S| must be at most {MAX_ALG_SET}, got {len(pts)}")
    if len(pts) == 1:
        return 0, AlgWitness(SparsePoly.constant(n, 1, p), pts[0], 0)
    arr = np.array(pts, dtype=np.int64)
    span = _SpanTracker(len(pts), p)
    for d in range(n * (p - 1) + 1):
        for e in _monomials(n, d, p):
            if span.rank == len(pts):
                break
            span.add(_eval_monomial(arr, e, p), e)
        members = span.unit_members()
        if members:
            vi = min(members)
            row = span.T[members[vi]]
            terms = {e: int(c) for e, c in zip(span.accepted, row) if c}
            g = SparsePoly(n, terms, p)
            return d, AlgWitness(g, pts[vi], d)
    raise AssertionError("indicator functions on a finite set are always polynomial")


def size_bound(S: PointSet) -> int:
    """floor(log2 |S|), the explicit upper bound on r(S)."""
    return floor(log2(len(S)))


def describe_index(S: PointSet, r: int, w: IndexWitness | None) -> str:
    if w is None:
        return f"r = {r}"
    return f"r = {r}; v = {w.v}, I = {{{', '.join(str(i + 1) for i in w.I)}}} ({mask_to_str(w.v.bits, S.n)})"
