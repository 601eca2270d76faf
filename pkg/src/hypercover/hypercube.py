"""Vertices, layers and subsets of the Boolean cube {0,1}^n.

A vertex is stored as an integer bit pattern: bit ``i`` holds coordinate
``x_{i+1}``.  Every textual form writes coordinates left to right as
``x_1 x_2 ... x_n``, so the point with ``x_1 = 1`` and all other coordinates
zero is ``"100...0"`` and has bit pattern ``1``.

"Lexicographic" order always means the order of those bit strings.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Iterator

import numpy as np

MAX_POINTWISE_N = 63
DEFAULT_MAX_ENUM_N = 24


def max_enum_n() -> int:
    """Largest dimension allowed for whole-cube enumeration.

    ``HYPERCOVER_MAX_N`` raises (or lowers) the default cap of 24.
    """
    raw = os.environ.get("HYPERCOVER_MAX_N")
    if raw is None:
        return DEFAULT_MAX_ENUM_N
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"HYPERCOVER_MAX_N must be an integer, got {raw!r}") from None


def check_enum_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    cap = max_enum_n()
    if n > cap:
        raise ValueError(f"full-cube enumeration needs n <= {cap}, got n={n}")


def mask_to_str(mask: int, n: int) -> str:
    return "".join("1" if (mask >> i) & 1 else "0" for i in range(n))


def str_to_mask(s: str) -> int:
    mask = 0
    for i, ch in enumerate(s):
        if ch == "1":
            mask |= 1 << i
        elif ch != "0":
            raise ValueError(f"not a bit string: {s!r}")
    return mask


def lex_key(mask: int, n: int) -> int:
    """Sort key placing bit patterns in lexicographic bit-string order."""
    key = 0
    for i in range(n):
        key = (key << 1) | ((mask >> i) & 1)
    return key


def weight_of(mask: int) -> int:
    return mask.bit_count()


def all_masks(n: int) -> np.ndarray:
    """Every vertex of {0,1}^n as an int64 array indexed by bit pattern."""
    check_enum_n(n)
    return np.arange(1 << n, dtype=np.int64)


def bit_matrix(n: int) -> np.ndarray:
    """``(2^n, n)`` 0/1 matrix; row ``m`` holds the coordinates of pattern ``m``."""
    idx = all_masks(n)
    return ((idx[:, None] >> np.arange(n, dtype=np.int64)) & 1).astype(np.int64)


def popcounts(n: int) -> np.ndarray:
    idx = all_masks(n)
    out = np.zeros_like(idx)
    for i in range(n):
        out += (idx >> i) & 1
    return out


@dataclass(frozen=True)
class CubePoint:
    n: int
    bits: int

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_POINTWISE_N:
            raise ValueError(f"dimension must be in [1, {MAX_POINTWISE_N}], got {self.n}")
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError(f"bits {self.bits} do not fit in dimension {self.n}")

    @classmethod
    def from_string(cls, s: str) -> CubePoint:
        s = s.strip()
        return cls(len(s), str_to_mask(s))

    @classmethod
    def from_coords(cls, coords: Iterable[int]) -> CubePoint:
        coords = list(coords)
        mask = 0
        for i, c in enumerate(coords):
            if c not in (0, 1):
                raise ValueError(f"coordinate {i + 1} is {c}, expected 0 or 1")
            mask |= c << i
        return cls(len(coords), mask)

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def coords(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.n))

    def complement(self) -> CubePoint:
        return CubePoint(self.n, self.bits ^ ((1 << self.n) - 1))

    def __getitem__(self, i: int) -> int:
        """Coordinate ``x_{i+1}`` (zero-based index)."""
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __str__(self) -> str:
        return mask_to_str(self.bits, self.n)

    def __lt__(self, other: CubePoint) -> bool:
        return lex_key(self.bits, self.n) < lex_key(other.bits, other.n)


def weight(p: CubePoint) -> int:
    return p.weight


class PointSet:
    """An immutable set of vertices of {0,1}^n."""

    __slots__ = ("n", "masks")

    def __init__(self, n: int, masks: Iterable[int] = ()) -> None:
        if not 1 <= n <= MAX_POINTWISE_N:
            raise ValueError(f"dimension must be in [1, {MAX_POINTWISE_N}], got {n}")
        ms = frozenset(int(m) for m in masks)
        limit = 1 << n
        for m in ms:
            if not 0 <= m < limit:
                raise ValueError(f"bit pattern {m} does not fit in dimension {n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "masks", ms)

    def __setattr__(self, name, value):
        raise AttributeError("PointSet is immutable")

    @classmethod
    def from_points(cls, n: int, points: Iterable[CubePoint]) -> PointSet:
        masks = []
        for p in points:
            if p.n != n:
                raise ValueError(f"point {p} has dimension {p.n}, expected {n}")
            masks.append(p.bits)
        return cls(n, masks)

    @classmethod
    def from_strings(cls, strings: Iterable[str], n: int | None = None) -> PointSet:
        strings = [s.strip() for s in strings if s.strip()]
        if n is None:
            if not strings:
                raise ValueError("dimension needed for an empty point set")
            n = len(strings[0])
        for s in strings:
            if len(s) != n:
                raise ValueError(f"bit string {s!r} has length {len(s)}, expected {n}")
        return cls(n, (str_to_mask(s) for s in strings))

    @classmethod
    def full(cls, n: int) -> PointSet:
        check_enum_n(n)
        return cls(n, range(1 << n))

    def __len__(self) -> int:
        return len(self.masks)

    def __contains__(self, item) -> bool:
        if isinstance(item, CubePoint):
            return item.n == self.n and item.bits in self.masks
        return item in self.masks

    def __iter__(self) -> Iterator[CubePoint]:
        for m in self.sorted_masks():
            yield CubePoint(self.n, m)

    def __eq__(self, other) -> bool:
        return isinstance(other, PointSet) and self.n == other.n and self.masks == other.masks

    def __hash__(self) -> int:
        return hash((self.n, self.masks))

    def __repr__(self) -> str:
        shown = ", ".join(mask_to_str(m, self.n) for m in self.sorted_masks()[:8])
        more = ", ..." if len(self) > 8 else ""
        return f"PointSet(n={self.n}, {{{shown}{more}}})"

    def sorted_masks(self) -> list[int]:
        return sorted(self.masks, key=lambda m: lex_key(m, self.n))

    def _same_dim(self, other: PointSet) -> None:
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __or__(self, other: PointSet) -> PointSet:
        self._same_dim(other)
        return PointSet(self.n, self.masks | other.masks)

    def __and__(self, other: PointSet) -> PointSet:
        self._same_dim(other)
        return PointSet(self.n, self.masks & other.masks)

    def __sub__(self, other: PointSet) -> PointSet:
        self._same_dim(other)
        return PointSet(self.n, self.masks - other.masks)

    def complement(self) -> PointSet:
        check_enum_n(self.n)
        return PointSet(self.n, set(range(1 << self.n)) - self.masks)

    def indicator(self) -> np.ndarray:
        """Dense boolean membership array indexed by bit pattern."""
        check_enum_n(self.n)
        out = np.zeros(1 << self.n, dtype=bool)
        if self.masks:
            out[np.fromiter(self.masks, dtype=np.int64, count=len(self.masks))] = True
        return out

    # -- serialization -------------------------------------------------

    def to_text(self) -> str:
        lines = [f"n={self.n}"]
        lines.extend(mask_to_str(m, self.n) for m in self.sorted_masks())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> PointSet:
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines or not lines[0].startswith("n="):
            raise ValueError("point-set text must start with a header line 'n=<dim>'")
        n = int(lines[0][2:])
        return cls.from_strings(lines[1:], n=n)

    def to_json(self) -> list[str]:
        return [mask_to_str(m, self.n) for m in self.sorted_masks()]

    @classmethod
    def from_json(cls, data, n: int | None = None) -> PointSet:
        if isinstance(data, dict):
            return cls.from_strings(data.get("points", []), n=data.get("n", n))
        return cls.from_strings(data, n=n)

    @classmethod
    def load(cls, path: str, n: int | None = None) -> PointSet:
        """Read either the text format or the JSON array form.

        ``n`` is only needed for an empty JSON array, which carries no dimension.
        """
        with open(path) as fh:
            text = fh.read()
        stripped = text.lstrip()
        if stripped.startswith("[") or stripped.startswith("{"):
            return cls.from_json(json.loads(text), n=n)
        return cls.from_text(text)


def layer(n: int, k: int) -> PointSet:
    """The k-th layer: all vertices with exactly k ones."""
    if not 0 <= k <= n:
        raise ValueError(f"layer index k={k} outside [0, {n}]")
    if comb(n, k) > 1 << max_enum_n():
        raise ValueError(f"layer C({n},{k}) is too large to enumerate")
    return PointSet(n, (sum(1 << i for i in c) for c in combinations(range(n), k)))


def tail_set(n: int, ell: int) -> PointSet:
    """Vertices of weight below ``ell`` or above ``n - ell``."""
    if not 1 <= ell <= n // 2:
        raise ValueError(f"ell={ell} outside [1, {n // 2}]")
    check_enum_n(n)
    w = popcounts(n)
    keep = np.nonzero((w < ell) | (w > n - ell))[0]
    return PointSet(n, keep.tolist())


def weight_set(S: PointSet) -> set[int]:
    return {m.bit_count() for m in S.masks}


def weight_count(S: PointSet) -> int:
    """Cardinality of :func:`weight_set`."""
    return len(weight_set(S))


def first_k_ones(n: int, k: int) -> CubePoint:
    return CubePoint(n, (1 << k) - 1)
