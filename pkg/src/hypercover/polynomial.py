"""Exact sparse multivariate polynomials over Q or Z_p.

Terms live in a dict mapping exponent tuples to nonzero coefficients.  Over
the rationals a coefficient is an ``int`` when integral and a ``Fraction``
otherwise; over Z_p it is an ``int`` in ``[1, p)``.

The zero polynomial has degree :data:`NEG_INF` (negative infinity) rather
than -1, so ``deg(f) + deg(g) >= bound`` fails for a zero factor instead of
silently succeeding.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb, factorial, gcd
from typing import Iterable, Mapping, Sequence

NEG_INF = float("-inf")

Exponent = tuple[int, ...]


def _norm_rational(c) -> int | Fraction:
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def multinomial(m: int, parts: Sequence[int]) -> int:
    """``m! / prod(parts_i!)``; zero unless the parts sum to ``m``."""
    if any(k < 0 for k in parts) or sum(parts) != m:
        return 0
    out = 1
    left = m
    for k in parts:
        out *= comb(left, k)
        left -= k
    return out


class SparsePoly:
    """Polynomial in ``n`` variables over Q (``p is None``) or Z_p."""

    __slots__ = ("n", "p", "terms")

    def __init__(self, n: int, terms: Mapping[Exponent, object] | None = None, p: int | None = None):
        if n < 1:
            raise ValueError(f"number of variables must be positive, got {n}")
        if p is not None and p < 2:
            raise ValueError(f"modulus must be a prime >= 2, got {p}")
        self.n = n
        self.p = p
        self.terms: dict[Exponent, int | Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n or any(x < 0 for x in e):
                raise ValueError(f"bad exponent {e} for {n} variables")
            c = self._coerce(c)
            if c:
                self.terms[e] = self._coerce(self.terms.get(e, 0) + c)
                if not self.terms[e]:
                    del self.terms[e]

    # -- construction ------------------------------------------------------

    def _coerce(self, c):
        if self.p is None:
            return _norm_rational(c)
        if isinstance(c, Fraction):
            if c.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator {c.denominator} not invertible mod {self.p}")
            return c.numerator * pow(c.denominator, -1, self.p) % self.p
        return int(c) % self.p

    @classmethod
    def _raw(cls, n: int, terms: dict, p: int | None) -> SparsePoly:
        out = cls.__new__(cls)
        out.n, out.p, out.terms = n, p, terms
        return out

    @classmethod
    def zero(cls, n: int, p: int | None = None) -> SparsePoly:
        return cls._raw(n, {}, p)

    @classmethod
    def constant(cls, n: int, c, p: int | None = None) -> SparsePoly:
        return cls(n, {(0,) * n: c}, p)

    @classmethod
    def variable(cls, n: int, i: int, p: int | None = None) -> SparsePoly:
        """The variable ``x_{i+1}``."""
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): 1}, p)

    @classmethod
    def linear(cls, a: Sequence, b=0, p: int | None = None) -> SparsePoly:
        """``<a, x> - b``."""
        n = len(a)
        terms: dict = {}
        for i, c in enumerate(a):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        terms[(0,) * n] = -b
        return cls(n, terms, p)

    @classmethod
    def monomial(cls, e: Sequence[int], c=1, p: int | None = None) -> SparsePoly:
        return cls(len(e), {tuple(e): c}, p)

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def degree(self) -> int | float:
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def coefficient_of(self, e: Sequence[int]):
        e = tuple(e)
        if len(e) != self.n:
            raise ValueError(f"exponent {e} has length {len(e)}, expected {self.n}")
        return self.terms.get(e, 0)

    def max_exponents(self) -> tuple[int, ...]:
        out = [0] * self.n
        for e in self.terms:
            for i, x in enumerate(e):
                if x > out[i]:
                    out[i] = x
        return tuple(out)

    def __eq__(self, other) -> bool:
        if isinstance(other, SparsePoly):
            return self.n == other.n and self.p == other.p and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == SparsePoly.constant(self.n, other, self.p)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, self.p, frozenset(self.terms.items())))

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: SparsePoly) -> None:
        if other.n != self.n:
            raise ValueError(f"variable count mismatch: {self.n} vs {other.n}")
        if other.p != self.p:
            raise ValueError(f"coefficient domain mismatch: {self.domain} vs {other.domain}")

    @property
    def domain(self) -> str:
        return "Q" if self.p is None else f"Z_{self.p}"

    def _lift(self, other) -> SparsePoly:
        if isinstance(other, SparsePoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return SparsePoly.constant(self.n, other, self.p)
        raise TypeError(f"cannot combine polynomial with {type(other).__name__}")

    def __add__(self, other) -> SparsePoly:
        other = self._lift(other)
        terms = dict(self.terms)
        p = self.p
        for e, c in other.terms.items():
            v = terms.get(e, 0) + c
            if p is not None:
                v %= p
            elif isinstance(v, Fraction) and v.denominator == 1:
                v = v.numerator
            if v:
                terms[e] = v
            else:
                terms.pop(e, None)
        return SparsePoly._raw(self.n, terms, p)

    __radd__ = __add__

    def __neg__(self) -> SparsePoly:
        p = self.p
        if p is None:
            return SparsePoly._raw(self.n, {e: -c for e, c in self.terms.items()}, p)
        return SparsePoly._raw(self.n, {e: (-c) % p for e, c in self.terms.items()}, p)

    def __sub__(self, other) -> SparsePoly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> SparsePoly:
        return self._lift(other) - self

    def __mul__(self, other) -> SparsePoly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._lift(other)
        p = self.p
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        if p is None:
            terms = {e: _norm_rational(c) if isinstance(c, Fraction) else c for e, c in terms.items() if c}
        else:
            terms = {e: c % p for e, c in terms.items() if c % p}
        return SparsePoly._raw(self.n, terms, p)

    __rmul__ = __mul__

    def scale(self, c) -> SparsePoly:
        c = self._coerce(c)
        if not c:
            return SparsePoly.zero(self.n, self.p)
        if self.p is None:
            return SparsePoly._raw(self.n, {e: _norm_rational(v * c) for e, v in self.terms.items()}, None)
        return SparsePoly._raw(self.n, {e: v * c % self.p for e, v in self.terms.items()}, self.p)

    def __pow__(self, k: int) -> SparsePoly:
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out = SparsePoly.constant(self.n, 1, self.p)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def partial_derivative(self, i: int, order: int = 1) -> SparsePoly:
        """Formal derivative ``d^order / dx_{i+1}^order``."""
        if not 0 <= i < self.n:
            raise ValueError(f"variable index {i} outside [0, {self.n})")
        terms: dict = {}
        for e, c in self.terms.items():
            if e[i] < order:
                continue
            falling = factorial(e[i]) // factorial(e[i] - order)
            ne = e[:i] + (e[i] - order,) + e[i + 1 :]
            terms[ne] = c * falling
        return SparsePoly(self.n, terms, self.p)

    def derivative(self, alpha: Sequence[int]) -> SparsePoly:
        out = self
        for i, k in enumerate(alpha):
            if k:
                out = out.partial_derivative(i, k)
        return out

    def evaluate(self, point: Sequence):
        if len(point) != self.n:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.n}")
        p = self.p
        total = 0
        if p is None:
            pt = [Fraction(x) if not isinstance(x, int) else x for x in point]
            for e, c in self.terms.items():
                v = c
                for x, k in zip(pt, e):
                    if k:
                        v *= x**k
                total += v
            return _norm_rational(total)
        pt = [int(x) % p if not isinstance(x, Fraction) else self._coerce(x) for x in point]
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v = v * pow(x, k, p) % p
            total += v
        return total % p

    __call__ = evaluate

    def translate(self, shift: Sequence) -> SparsePoly:
        """``P(x + shift)`` by expanding every shifted monomial."""
        if len(shift) != self.n:
            raise ValueError(f"shift has {len(shift)} coordinates, expected {self.n}")
        out: dict = {}
        for e, c in self.terms.items():
            # product over i of (x_i + s_i)^{e_i}, kept as a list of (exp, coeff)
            partial = [((), c)]
            for i, k in enumerate(e):
                s = shift[i]
                pieces = [(j, comb(k, j) * (s ** (k - j))) for j in range(k + 1)]
                partial = [(ex + (j,), cc * w) for ex, cc in partial for j, w in pieces if w]
            for ex, cc in partial:
                out[ex] = out.get(ex, 0) + cc
        return SparsePoly(self.n, out, self.p)

    def min_degree(self) -> int | float:
        """Smallest total degree of a stored term."""
        if not self.terms:
            return NEG_INF
        return min(sum(e) for e in self.terms)

    def reduced(self) -> SparsePoly:
        """Over Z_p: replace x^k (k >= p) by x^{k-(p-1)} until every exponent is < p."""
        if self.p is None:
            raise ValueError("reduction x^p = x only applies over Z_p")
        p = self.p
        terms: dict = {}
        for e, c in self.terms.items():
            ne = tuple(0 if k == 0 else (k - 1) % (p - 1) + 1 for k in e)
            terms[ne] = terms.get(ne, 0) + c
        return SparsePoly(self.n, terms, p)

    # -- text and JSON -----------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exponent, object]]:
        return sorted(self.terms.items(), key=lambda ec: (-sum(ec[0]), tuple(-x for x in ec[0])))

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}" for i, k in enumerate(e) if k)
            neg = self.p is None and c < 0
            mag = -c if neg else c
            if mono:
                body = mono if mag == 1 else f"{mag} * {mono}"
            else:
                body = f"{mag}"
            pieces.append(("- " if neg else "+ ") + body)
        text = " ".join(pieces)
        return text[2:] if text.startswith("+ ") else "-" + text[1:]

    __str__ = to_text

    def __repr__(self) -> str:
        return f"SparsePoly(n={self.n}, {self.domain}, {self.to_text()})"

    def to_json(self) -> dict:
        out: dict = {"n": self.n, "terms": []}
        if self.p is not None:
            out["p"] = self.p
        for e, c in self.sorted_terms():
            c = Fraction(c)
            cs = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
            out["terms"].append({"e": list(e), "c": cs})
        return out

    @classmethod
    def from_json(cls, data: dict) -> SparsePoly:
        n = int(data["n"])
        terms: dict = {}
        for item in data["terms"]:
            e = tuple(int(x) for x in item["e"])
            terms[e] = terms.get(e, 0) + Fraction(str(item["c"]))
        return cls(n, terms, data.get("p"))


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def parse_poly(text: str, n: int | None = None, p: int | None = None) -> SparsePoly:
    """Parse ``"c * x1^a1*x2^a2 + ..."``; coefficients are integers or ``num/den``.

    Without ``n`` the variable count is the largest index that appears.
    """
    src = text.strip()
    if not src:
        raise ValueError("empty polynomial text")
    parsed: list[tuple[Fraction, dict[int, int]]] = []
    pos = 0
    while pos < len(src):
        m = _TERM.match(src, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {src[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(1)
        powers: dict[int, int] = {}
        for factor in m.group(2).split("*"):
            factor = factor.strip()
            if not factor:
                continue
            fm = _FACTOR.match(factor)
            if fm:
                idx = int(fm.group(1))
                if idx < 1:
                    raise ValueError(f"variables are numbered from x1, got {factor!r}")
                powers[idx] = powers.get(idx, 0) + int(fm.group(2) or 1)
            else:
                try:
                    coeff *= Fraction(factor)
                except ValueError:
                    raise ValueError(f"bad factor {factor!r} in polynomial text") from None
        parsed.append((sign * coeff, powers))
        pos = m.end()
    top = max((max(pw) for _, pw in parsed if pw), default=1)
    if n is None:
        n = top
    elif top > n:
        raise ValueError(f"variable x{top} exceeds n={n}")
    terms: dict = {}
    for c, pw in parsed:
        e = tuple(pw.get(i + 1, 0) for i in range(n))
        terms[e] = terms.get(e, 0) + c
    return SparsePoly(n, terms, p)


def product(polys: Iterable[SparsePoly], n: int, p: int | None = None) -> SparsePoly:
    out = SparsePoly.constant(n, 1, p)
    for f in polys:
        out = out * f
    return out


def common_denominator(P: SparsePoly) -> int:
    den = 1
    for c in P.terms.values():
        if isinstance(c, Fraction):
            den = den * c.denominator // gcd(den, c.denominator)
    return den
