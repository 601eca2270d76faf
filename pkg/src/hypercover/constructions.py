"""Explicit hyperplane families covering parts of the cube.

Every builder returns the family in a fixed plane order so that its JSON
output is reproducible byte for byte.
"""

from __future__ import annotations

from .cover import CoverFamily, Hyperplane, coordinate_plane
from .hypercube import CubePoint, PointSet, check_enum_n, first_k_ones, layer

PROVENANCE = {
    "level-plane": "weight-level plane sum(x) = j",
    "tail-cover": "tail-set lemma: ell planes covering weights < ell or > n - ell",
    "layer-cover": "one-layer removal theorem: (t, t-1)-cover of the cube minus layer k",
    "layer-minus-point": "layer-minus-point corollary: min{k, n-k} planes missing one layer vertex",
    "halfcube": "half-cube example: n-1+2(t-1) planes, tight for index complexity 1",
    "venkitesh": "counterexample n=7, S = cube minus layer 3: exact cover with 4 planes",
}


def level_plane(n: int, j: int) -> Hyperplane:
    """``x_1 + ... + x_n - j = 0``."""
    if not 0 <= j <= n:
        raise ValueError(f"level j={j} outside [0, {n}]")
    return Hyperplane((1,) * n, j)


def tail_planes(n: int, ell: int) -> list[Hyperplane]:
    if not 1 <= ell <= n // 2:
        raise ValueError(f"ell={ell} outside [1, {n // 2}]")
    planes = []
    for j in range(1, ell + 1):
        a = [0] * n
        for i in range(n - j):
            a[i] = 1
        a[n - j] = -(n - 2 * ell + j)
        planes.append(Hyperplane(tuple(a), ell - j))
    return planes


def tail_cover(n: int, ell: int) -> CoverFamily:
    """``ell`` planes whose union on the cube is exactly the tail set T(ell).

    Plane ``j`` reads ``x_1 + ... + x_{n-j} - (n - 2 ell + j) x_{n-j+1} = ell - j``.
    """
    return CoverFamily.of(n, tail_planes(n, ell))


def _boundary_copies(n: int, t: int) -> list[Hyperplane]:
    zero = coordinate_plane(n, 0, 0)
    one = coordinate_plane(n, 0, 1)
    return [zero] * (t - 1) + [one] * (t - 1)


def layer_complement_cover(n: int, k: int, t: int) -> CoverFamily:
    """(t, t-1)-cover of the cube minus layer ``k`` with max{k, n-k} + 2t - 2 planes."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if not 0 <= k <= n:
        raise ValueError(f"k={k} outside [0, {n}]")
    if t < 1:
        raise ValueError(f"t must be positive, got {t}")
    if k in (0, n):
        planes = [level_plane(n, j) for j in range(n + 1) if j != k]
    else:
        r = min(k, n - k)
        window = range(r + 1, n - r + 1) if r == k else range(r, n - r)
        planes = tail_planes(n, r) + [level_plane(n, j) for j in window]
    return CoverFamily.of(n, planes + _boundary_copies(n, t))


def layer_minus_point_cover(n: int, k: int) -> tuple[CoverFamily, CubePoint]:
    """min{k, n-k} planes covering layer ``k`` except the returned vertex.

    For ``k <= n - k`` the missed vertex has ones in coordinates 1..k and
    plane ``j`` is ``n x_j + sum_{i != j} x_i = k``.  Larger ``k`` is handled by
    flipping every coordinate of the construction for ``n - k``.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if not 0 <= k <= n:
        raise ValueError(f"k={k} outside [0, {n}]")
    if k > n - k:
        fam, v = layer_minus_point_cover(n, n - k)
        return CoverFamily.of(n, [h.flipped() for h in fam.planes]), v.complement()
    planes = []
    for j in range(k):
        a = [1] * n
        a[j] = n
        planes.append(Hyperplane(tuple(a), k))
    return CoverFamily.of(n, planes), first_k_ones(n, k)


def halfcube_set(n: int) -> PointSet:
    """{u : u_1 = 1 and u_2 + ... + u_n < n - 1} together with the origin."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    check_enum_n(n)
    masks = [0]
    for m in range(1 << n):
        if m & 1 and (m >> 1).bit_count() < n - 1:
            masks.append(m)
    return PointSet(n, masks)


def halfcube_example_cover(n: int, t: int) -> tuple[CoverFamily, PointSet]:
    """(t, t-1)-cover of the cube minus the half-cube set, of size n - 1 + 2(t - 1).

    The last base plane is ``x_2 + ... + x_n = n - 1``; it is the one that picks
    up both the all-ones point and the x_1 = 0 points of weight n - 1.
    """
    if n < 3:
        raise ValueError(f"half-cube example needs n >= 3, got {n}")
    if t < 1:
        raise ValueError(f"t must be positive, got {t}")
    planes = []
    for j in range(1, n - 1):
        planes.append(Hyperplane((n,) + (1,) * (n - 1), j))
    planes.append(Hyperplane((0,) + (1,) * (n - 1), n - 1))
    return CoverFamily.of(n, planes + _boundary_copies(n, t)), halfcube_set(n)


def venkitesh_counterexample() -> tuple[CoverFamily, PointSet]:
    """Exact cover of Q^7 minus layer 3 by four planes, with the covered set.

    The covered set S has seven distinct weights, so the conjectured value
    of ec(S) would be 7 - 2 = 5.
    """
    n, k = 7, 3
    S = layer(n, k).complement()
    return layer_complement_cover(n, k, 1), S
