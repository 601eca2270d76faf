"""Exact minimum (t, l)-covers over a finite catalog of hyperplane traces.

A trace is the set of cube vertices on a hyperplane.  The catalog holds
every trace realized by integer planes with coefficients in [-B, B]; any
minimality the search reports is relative to that catalog.  The proven
lower bounds are cited separately.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian
from math import comb

import numpy as np

from .complexity import index_complexity_exact
from .cover import CoverFamily, Hyperplane, verify_cover
from .hypercube import PointSet, bit_matrix, lex_key, mask_to_str

MAX_SEARCH_N = 5
MAX_SEARCH_T = 3


@dataclass(frozen=True)
class TraceCatalog:
    """Distinct nonempty proper traces on {0,1}^n, each with one representative plane.

    Traces are bitsets over the 2^n vertices (bit ``m`` set when vertex with
    bit pattern ``m`` is on the plane).  Entries are ordered by decreasing
    trace size, then lexicographically by the trace's vertex list.
    """

    n: int
    B: int
    traces: tuple[int, ...]
    planes: tuple[Hyperplane, ...]

    def __len__(self) -> int:
        return len(self.traces)

    def members(self, i: int) -> list[int]:
        tr = self.traces[i]
        return [m for m in range(1 << self.n) if (tr >> m) & 1]

    def family(self, indices) -> CoverFamily:
        return CoverFamily.of(self.n, [self.planes[i] for i in indices])

    def trace_set(self, i: int) -> PointSet:
        return PointSet(self.n, self.members(i))


def enumerate_traces(n: int, B: int) -> TraceCatalog:
    """All traces of planes ``<a, x> = b`` with a in [-B, B]^n (nonzero) and |b| <= nB.

    The representative of a trace minimizes sum|a_i| + |b|, then max|a_i|,
    then the tuple (a, b).
    """
    if not 1 <= n <= MAX_SEARCH_N:
        raise ValueError(f"trace enumeration needs 1 <= n <= {MAX_SEARCH_N}, got {n}")
    if not 1 <= B <= n + 1:
        raise ValueError(f"coefficient bound must be in [1, {n + 1}], got {B}")
    A = np.array([a for a in cartesian(range(-B, B + 1), repeat=n) if any(a)], dtype=np.int64)
    X = bit_matrix(n)
    V = A @ X.T  # values <a, x> at every vertex
    weights = np.left_shift(np.int64(1), np.arange(1 << n, dtype=np.int64)).astype(np.uint64)
    full = (1 << (1 << n)) - 1
    a_abs = np.abs(A).sum(axis=1)
    a_max = np.abs(A).max(axis=1)
    rows_mask, rows_cost, rows_max, rows_idx, rows_b = [], [], [], [], []
    for b in range(-n * B, n * B + 1):
        hit = V == b
        has = hit.any(axis=1)
        if not has.any():
            continue
        idx = np.nonzero(has)[0]
        masks = (hit[idx].astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)
        rows_mask.append(masks)
        rows_cost.append(a_abs[idx] + abs(b))
        rows_max.append(a_max[idx])
        rows_idx.append(idx)
        rows_b.append(np.full(idx.size, b, dtype=np.int64))
    masks = np.concatenate(rows_mask)
    cost = np.concatenate(rows_cost)
    amax = np.concatenate(rows_max)
    aidx = np.concatenate(rows_idx)
    bval = np.concatenate(rows_b)
    keep = masks != np.uint64(full)
    masks, cost, amax, aidx, bval = masks[keep], cost[keep], amax[keep], aidx[keep], bval[keep]
    # lexsort: last key is primary; a's columns sort the tuple a lexicographically
    a_cols = [A[aidx, i] for i in range(n)]
    order = np.lexsort([bval] + a_cols[::-1] + [amax, cost, masks])
    _, first = np.unique(masks[order], return_index=True)
    best = {}
    for j in order[first].tolist():
        best[int(masks[j])] = (tuple(int(x) for x in A[aidx[j]]), int(bval[j]))

    def entry_key(m: int):
        pts = [m2 for m2 in range(1 << n) if (m >> m2) & 1]
        return (-len(pts), sorted(mask_to_str(x, n) for x in pts))

    keys = sorted(best, key=entry_key)
    planes = tuple(Hyperplane(best[m][0], best[m][1]) for m in keys)
    return TraceCatalog(n, B, tuple(keys), planes)


@dataclass(frozen=True)
class SearchResult:
    size: int | None
    family: CoverFamily | None
    lower_bound: int
    bound_source: str
    exhausted: bool
    B: int
    indices: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "family": self.family.to_json() if self.family is not None else None,
            "catalog_indices": list(self.indices),
            "lower_bound": self.lower_bound,
            "bound_source": self.bound_source,
            "exhausted": self.exhausted,
            "scope": f"minimal within catalog(B={self.B})",
        }


def theorem_lower_bound(S: PointSet, t: int, ell: int) -> tuple[int, str]:
    """Unconditional lower bound on the size of a (t, t-1)-cover of the cube minus S."""
    n = S.n
    if ell != t - 1 or len(S) == 0 or len(S) == 1 << n:
        return 0, "none"
    if len(S) == 1:
        return n + 2 * t - 2, "single point: n + 2t - 2"
    r, _ = index_complexity_exact(S)
    bound, source = n - r + 2 * t - 2, f"index complexity r={r}: n - r + 2t - 2"
    weights = {m.bit_count() for m in S.masks}
    k = weights.pop() if len(weights) == 1 else None
    if k is not None and len(S) == comb(n, k):
        layer_bound = max(k, n - k) + 2 * t - 2
        if layer_bound > bound:
            bound, source = layer_bound, f"layer k={k}: max{{k, n-k}} + 2t - 2"
    return bound, source


class _Solver:
    def __init__(self, catalog: TraceCatalog, S: PointSet, t: int, ell: int):
        self.n = catalog.n
        self.N = 1 << catalog.n
        self.inside = [m in S.masks for m in range(self.N)]
        self.need = [ell if self.inside[m] else t for m in range(self.N)]
        self.ell = ell
        self.t = t
        # lexicographic vertex order decides which deficient vertex to branch on
        self.point_order = sorted(range(self.N), key=lambda m: lex_key(m, self.n))
        self.members = [catalog.members(i) for i in range(len(catalog))]
        self.s_members = [[m for m in mem if self.inside[m]] for mem in self.members]
        self.by_point = [[] for _ in range(self.N)]
        for i, mem in enumerate(self.members):
            for m in mem:
                self.by_point[m].append(i)
        self.memo: set = set()

    def usable(self, counts, i: int) -> bool:
        return all(counts[m] < self.ell for m in self.s_members[i])

    def useful_size(self, counts, i: int) -> int:
        return sum(1 for m in self.members[i] if counts[m] < self.need[m])

    def deficit(self, counts, m: int) -> int:
        return max(0, self.need[m] - counts[m])

    def done(self, counts) -> bool:
        return all(counts[m] >= self.need[m] for m in range(self.N))

    def feasible(self, counts: tuple, budget: int, lo: int) -> bool:
        """Can planes with catalog index >= lo finish the cover within ``budget``?"""
        if self.done(counts):
            return True
        if budget == 0:
            return False
        key = (counts, budget, lo)
        if key in self.memo:
            return False
        best = None
        total = 0
        largest = 0
        for m in self.point_order:
            d = self.deficit(counts, m)
            if d == 0:
                continue
            if d > budget:
                self.memo.add(key)
                return False
            total += d
            cands = [i for i in self.by_point[m] if i >= lo and self.usable(counts, i)]
            if len(cands) < 1:
                self.memo.add(key)
                return False
            largest = max(largest, max(self.useful_size(counts, i) for i in cands))
            if best is None or len(cands) < len(best):
                best = cands
        if total > budget * largest:
            self.memo.add(key)
            return False
        for i in best:
            nxt = list(counts)
            for m in self.members[i]:
                nxt[m] += 1
            if self.feasible(tuple(nxt), budget - 1, lo):
                return True
        self.memo.add(key)
        return False

    def lex_first(self, size: int) -> tuple[int, ...] | None:
        """Lexicographically smallest sorted index tuple of a feasible family of this size."""
        counts = tuple([0] * self.N)
        if not self.feasible(counts, size, 0):
            return None
        chosen: list[int] = []
        lo = 0
        for left in range(size, 0, -1):
            for i in range(lo, len(self.members)):
                if not self.usable(counts, i):
                    continue
                nxt = list(counts)
                for m in self.members[i]:
                    nxt[m] += 1
                nxt = tuple(nxt)
                if self.feasible(nxt, left - 1, i):
                    chosen.append(i)
                    counts, lo = nxt, i
                    break
            else:
                return None
        return tuple(chosen)


def min_cover_search(catalog: TraceCatalog, S: PointSet, t: int, ell: int,
                     max_size: int | None = None, use_bound: bool = True) -> SearchResult:
    """Smallest (t, ell)-cover of the cube minus ``S`` built from catalog planes.

    Sizes are tried in increasing order from the proven lower bound (when
    ``ell = t - 1`` and ``use_bound``) or from 0.  At the first feasible size
    the lexicographically smallest multiset of catalog indices is returned.
    """
    if S.n != catalog.n:
        raise ValueError(f"dimension mismatch: catalog n={catalog.n}, set n={S.n}")
    if not 1 <= t <= MAX_SEARCH_T:
        raise ValueError(f"t must be in [1, {MAX_SEARCH_T}], got {t}")
    if not 0 <= ell < t:
        raise ValueError(f"need 0 <= l < t, got l={ell}, t={t}")
    n = catalog.n
    bound, source = theorem_lower_bound(S, t, ell)
    start = bound if use_bound else 0
    if max_size is None:
        max_size = t * ((1 << n) - len(S)) + ell * len(S)
    solver = _Solver(catalog, S, t, ell)
    for size in range(start, max_size + 1):
        idx = solver.lex_first(size)
        if idx is None:
            continue
        fam = catalog.family(idx)
        report = verify_cover(fam, S, t, ell)
        if not report.ok:
            raise AssertionError("search produced a family that fails verification")
        if ell == t - 1 and size < bound:
            raise AssertionError(f"family of size {size} beats the proven bound {bound}")
        return SearchResult(size, fam, bound, source, True, catalog.B, idx)
    return SearchResult(None, None, bound, source, True, catalog.B)
