"""Integer hyperplanes, cover families and (t, l)-cover verification."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .hypercube import CubePoint, PointSet, all_masks, check_enum_n, lex_key

_INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class Hyperplane:
    """The affine hyperplane ``<a, x> - b = 0`` with integer coefficients."""

    a: tuple[int, ...]
    b: int

    def __post_init__(self) -> None:
        a = tuple(int(c) for c in self.a)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", int(self.b))
        if not a:
            raise ValueError("hyperplane needs at least one coefficient")
        if all(c == 0 for c in a):
            raise ValueError("hyperplane coefficient vector is all zero")

    @property
    def n(self) -> int:
        return len(self.a)

    def eval(self, p: CubePoint) -> int:
        if p.n != self.n:
            raise ValueError(f"dimension mismatch: plane has n={self.n}, point has n={p.n}")
        return sum(c for i, c in enumerate(self.a) if (p.bits >> i) & 1) - self.b

    def eval_mask(self, mask: int) -> int:
        return sum(c for i, c in enumerate(self.a) if (mask >> i) & 1) - self.b

    def scaled(self, factor: int) -> Hyperplane:
        if factor == 0:
            raise ValueError("cannot scale a hyperplane by zero")
        return Hyperplane(tuple(factor * c for c in self.a), factor * self.b)

    def flipped(self) -> Hyperplane:
        """Image under x_i -> 1 - x_i for every coordinate."""
        return Hyperplane(tuple(-c for c in self.a), self.b - sum(self.a))

    def magnitude(self) -> int:
        return sum(abs(c) for c in self.a) + abs(self.b)

    def values(self) -> np.ndarray:
        """``H(x)`` at every vertex, indexed by bit pattern."""
        check_enum_n(self.n)
        if self.magnitude() < _INT64_SAFE:
            idx = all_masks(self.n)
            out = np.full(1 << self.n, -self.b, dtype=np.int64)
            for i, c in enumerate(self.a):
                if c:
                    out += c * ((idx >> i) & 1)
            return out
        out = np.empty(1 << self.n, dtype=object)
        for m in range(1 << self.n):
            out[m] = self.eval_mask(m)
        return out

    def trace(self) -> PointSet:
        """Vertices of the cube lying on the plane."""
        return PointSet(self.n, np.nonzero(self.values() == 0)[0].tolist())

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.a):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            parts.append(f"{sign} {mag}x{i + 1}")
        if self.b:
            parts.append(f"{'-' if self.b > 0 else '+'} {abs(self.b)}")
        text = " ".join(parts)
        text = text[2:] if text.startswith("+ ") else "-" + text[2:]
        return f"{text} = 0"


def plane(a: Sequence[int], b: int) -> Hyperplane:
    return Hyperplane(tuple(a), b)


def coordinate_plane(n: int, i: int, value: int) -> Hyperplane:
    """``x_{i+1} - value = 0``."""
    a = [0] * n
    a[i] = 1
    return Hyperplane(tuple(a), value)


@dataclass(frozen=True)
class CoverFamily:
    """A multiset of hyperplanes in dimension ``n``.

    ``entries`` keeps each listed plane with its multiplicity, which is how
    the JSON form stores it; ``planes`` expands the multiset.
    """

    n: int
    entries: tuple[tuple[Hyperplane, int], ...] = ()

    def __post_init__(self) -> None:
        entries = tuple((h, int(k)) for h, k in self.entries)
        for h, k in entries:
            if h.n != self.n:
                raise ValueError(f"plane {h} has dimension {h.n}, family has {self.n}")
            if k < 1:
                raise ValueError(f"multiplicity must be positive, got {k}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, n: int, planes: Iterable[Hyperplane]) -> CoverFamily:
        """Family listing every plane once; consecutive duplicates are merged."""
        entries: list[list] = []
        for h in planes:
            if entries and entries[-1][0] == h:
                entries[-1][1] += 1
            else:
                entries.append([h, 1])
        return cls(n, tuple((h, k) for h, k in entries))

    @property
    def planes(self) -> list[Hyperplane]:
        return [h for h, k in self.entries for _ in range(k)]

    @property
    def size(self) -> int:
        return sum(k for _, k in self.entries)

    def __len__(self) -> int:
        return self.size

    def __add__(self, other: CoverFamily) -> CoverFamily:
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
        return CoverFamily(self.n, self.entries + other.entries)

    def without(self, index: int) -> CoverFamily:
        """Drop one copy of the ``index``-th plane of :attr:`planes`."""
        ps = self.planes
        del ps[index]
        return CoverFamily.of(self.n, ps)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "planes": [{"a": list(h.a), "b": h.b, "mult": k} for h, k in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict) -> CoverFamily:
        n = int(data["n"])
        entries = []
        for item in data["planes"]:
            a = item["a"]
            if len(a) != n:
                raise ValueError(f"plane {item} has {len(a)} coefficients, expected {n}")
            entries.append((Hyperplane(tuple(a), item["b"]), int(item.get("mult", 1))))
        return cls(n, tuple(entries))

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def load(cls, path: str) -> CoverFamily:
        with open(path) as fh:
            return cls.from_json(json.load(fh))


@dataclass(frozen=True)
class MultiplicityProfile:
    n: int
    counts: np.ndarray = field(repr=False)

    def __getitem__(self, p: CubePoint | int) -> int:
        if isinstance(p, CubePoint):
            if p.n != self.n:
                raise ValueError(f"dimension mismatch: profile n={self.n}, point n={p.n}")
            p = p.bits
        return int(self.counts[p])

    def __add__(self, other: MultiplicityProfile) -> MultiplicityProfile:
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
        return MultiplicityProfile(self.n, self.counts + other.counts)

    def covered(self) -> PointSet:
        return PointSet(self.n, np.nonzero(self.counts > 0)[0].tolist())


def profile(F: CoverFamily) -> MultiplicityProfile:
    """Number of planes of ``F`` (with multiplicity) through each vertex."""
    check_enum_n(F.n)
    counts = np.zeros(1 << F.n, dtype=np.int64)
    for h, k in F.entries:
        counts += k * (h.values() == 0)
    return MultiplicityProfile(F.n, counts)


@dataclass(frozen=True)
class Violation:
    point: CubePoint
    rule: str
    count: int

    def to_json(self) -> dict:
        return {"point": str(self.point), "rule": self.rule, "count": self.count}


@dataclass(frozen=True)
class CoverReport:
    ok: bool
    violations: tuple[Violation, ...]
    m: int

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "m": self.m,
            "violations": [v.to_json() for v in self.violations],
        }


def verify_cover(F: CoverFamily, S: PointSet, t: int, ell: int) -> CoverReport:
    """Check that ``F`` is a (t, ell)-cover of the cube minus ``S``.

    Points of ``S`` must lie on exactly ``ell`` planes, every other vertex on
    at least ``t``.  All failing vertices are listed in lexicographic order.
    """
    if S.n != F.n:
        raise ValueError(f"dimension mismatch: family n={F.n}, set n={S.n}")
    if t < 1:
        raise ValueError(f"t must be positive, got {t}")
    if not 0 <= ell < t:
        raise ValueError(f"need 0 <= l < t, got l={ell}, t={t}")
    counts = profile(F).counts
    inside = S.indicator()
    bad = np.nonzero((inside & (counts != ell)) | (~inside & (counts < t)))[0]
    violations = []
    for m in sorted(bad.tolist(), key=lambda m: lex_key(m, F.n)):
        rule = f"exactly {ell}" if inside[m] else f"at least {t}"
        violations.append(Violation(CubePoint(F.n, m), rule, int(counts[m])))
    return CoverReport(not violations, tuple(violations), F.size)


def describe(F: CoverFamily) -> str:
    rows = []
    for h, k in F.entries:
        rows.append(f"{k:>4} x  {h}")
    return "\n".join(rows)


__all__ = [
    "CoverFamily",
    "CoverReport",
    "Hyperplane",
    "MultiplicityProfile",
    "Violation",
    "coordinate_plane",
    "describe",
    "plane",
    "profile",
    "verify_cover",
]
