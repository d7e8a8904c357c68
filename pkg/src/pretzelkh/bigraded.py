"""Bigraded vector spaces over the rationals, recorded by dimension.

A space is a finite collection of graded pieces indexed by pairs (t, q):
t is the homological grading, q the quantum grading.  Only dimensions are
stored, so a space is a sparse map (t, q) -> positive int.  The diagonal
grading delta = q - 2t slices a space into (anti)diagonals; homologies of
thin links occupy two adjacent diagonals, and most structure arguments in
this package run along delta.

Conventions:
  * shift(a, b) multiplies by q^a t^b, moving a generator at (t, q) to
    (t + b, q + a);
  * euler_characteristic collapses t with alternating signs, leaving a
    Laurent polynomial in q;
  * mirror negates both gradings, matching the behaviour of Khovanov
    homology under taking the mirror link.
"""

from __future__ import annotations

import json
from typing import Iterable, Iterator, Mapping

from .errors import NegativeEntry

__all__ = ["BigradedSpace", "LaurentPoly"]


class BigradedSpace:
    """Finite-dimensional bigraded space, stored as {(t, q): dim}.

    Zero entries are pruned on construction, so equal spaces always have
    equal underlying maps and ``==`` is structural.
    """

    __slots__ = ("_dims",)

    def __init__(self, dims: Mapping[tuple[int, int], int] | None = None):
        clean: dict[tuple[int, int], int] = {}
        if dims:
            for (t, q), d in dims.items():
                if d < 0:
                    raise NegativeEntry(f"dimension {d} at (t={t}, q={q})")
                if d:
                    clean[(int(t), int(q))] = int(d)
        self._dims = clean

    # -- basic queries -------------------------------------------------

    def dim(self, t: int, q: int) -> int:
        return self._dims.get((t, q), 0)

    @property
    def total_dim(self) -> int:
        return sum(self._dims.values())

    def is_zero(self) -> bool:
        return not self._dims

    def support(self) -> list[tuple[int, int]]:
        """All (t, q) with nonzero dimension, sorted by (t, q)."""
        return sorted(self._dims)

    def items(self) -> Iterator[tuple[tuple[int, int], int]]:
        return iter(sorted(self._dims.items()))

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self._dims)

    def t_range(self) -> tuple[int, int]:
        """(min t, max t) of the support; undefined on the zero space."""
        ts = [t for t, _ in self._dims]
        return min(ts), max(ts)

    # -- algebra -------------------------------------------------------

    def shift(self, a: int, b: int) -> "BigradedSpace":
        """Multiply by q^a t^b: each generator moves (t, q) -> (t+b, q+a)."""
        return BigradedSpace({(t + b, q + a): d for (t, q), d in self._dims.items()})

    def direct_sum(self, other: "BigradedSpace") -> "BigradedSpace":
        out = dict(self._dims)
        for key, d in other._dims.items():
            out[key] = out.get(key, 0) + d
        return BigradedSpace(out)

    def __add__(self, other: "BigradedSpace") -> "BigradedSpace":
        return self.direct_sum(other)

    def mirror(self) -> "BigradedSpace":
        """Negate both gradings: (t, q) -> (-t, -q)."""
        return BigradedSpace({(-t, -q): d for (t, q), d in self._dims.items()})

    def delta_slice(self, delta: int) -> "BigradedSpace":
        """The part supported on the diagonal q - 2t = delta."""
        return BigradedSpace(
            {(t, q): d for (t, q), d in self._dims.items() if q - 2 * t == delta}
        )

    def delta_support(self) -> list[int]:
        """Sorted distinct values of q - 2t over the support."""
        return sorted({q - 2 * t for (t, q) in self._dims})

    def euler_characteristic(self) -> "LaurentPoly":
        """Sum of (-1)^t dim(t, q) q^q as a Laurent polynomial in q."""
        coeffs: dict[int, int] = {}
        for (t, q), d in self._dims.items():
            coeffs[q] = coeffs.get(q, 0) + (d if t % 2 == 0 else -d)
        return LaurentPoly(coeffs)

    # -- comparisons / misc -------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BigradedSpace):
            return NotImplemented
        return self._dims == other._dims

    def __hash__(self) -> int:
        return hash(frozenset(self._dims.items()))

    def __bool__(self) -> bool:
        return bool(self._dims)

    def __repr__(self) -> str:
        return f"BigradedSpace({self._dims!r})"

    # -- serialization -------------------------------------------------

    def poincare(self) -> str:
        """Render as a sum of ``c*q^j*t^i`` terms, sorted by (t, q).

        A unit coefficient and zero exponents are omitted, so the unknot
        homology renders as ``q^-1 + q``.  The zero space renders as ``0``.
        """
        if not self._dims:
            return "0"
        parts = []
        for (t, q), d in sorted(self._dims.items()):
            factors = []
            if d != 1:
                factors.append(str(d))
            if q != 0:
                factors.append(f"q^{q}" if q != 1 else "q")
            if t != 0:
                factors.append(f"t^{t}" if t != 1 else "t")
            parts.append("*".join(factors) if factors else "1")
        return " + ".join(parts)

    def to_json(self) -> str:
        terms = [
            {"t": t, "q": q, "dim": d} for (t, q), d in sorted(self._dims.items())
        ]
        return json.dumps({"terms": terms})

    @classmethod
    def from_json(cls, text: str) -> "BigradedSpace":
        data = json.loads(text)
        dims: dict[tuple[int, int], int] = {}
        for term in data["terms"]:
            key = (int(term["t"]), int(term["q"]))
            dims[key] = dims.get(key, 0) + int(term["dim"])
        return cls(dims)


class LaurentPoly:
    """Integer Laurent polynomial in q, stored as {exponent: coefficient}."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self._coeffs = {int(e): int(c) for e, c in (coeffs or {}).items() if c}

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    def coeff(self, exp: int) -> int:
        return self._coeffs.get(exp, 0)

    def as_dict(self) -> dict[int, int]:
        return dict(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def exponents(self) -> list[int]:
        return sorted(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) - c
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._coeffs.items()})

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self._coeffs.items()})
        out: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def substitute_inverse(self) -> "LaurentPoly":
        """q -> q^-1, the effect of mirroring on Jones polynomials."""
        return LaurentPoly({-e: c for e, c in self._coeffs.items()})

    def divide_exact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division; raises ValueError when the division leaves a remainder."""
        if other.is_zero():
            raise ValueError("division by the zero polynomial")
        rem = dict(self._coeffs)
        quot: dict[int, int] = {}
        d_exps = sorted(other._coeffs)
        d_lead = d_exps[-1]
        d_lead_c = other._coeffs[d_lead]
        # an exact quotient lives between min(self)-min(other) and
        # max(self)-max(other); falling below the floor means a remainder
        floor = (min(self._coeffs) - d_exps[0]) if self._coeffs else 0
        while rem:
            lead = max(rem)
            c, r = divmod(rem[lead], d_lead_c)
            if r:
                raise ValueError("inexact division")
            e = lead - d_lead
            if e < floor:
                raise ValueError("inexact division")
            quot[e] = c
            for de, dc in other._coeffs.items():
                k = e + de
                v = rem.get(k, 0) - c * dc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return LaurentPoly(quot)

    def __repr__(self) -> str:
        return f"LaurentPoly({self._coeffs!r})"

    def __str__(self) -> str:
        return self.text()

    def text(self) -> str:
        """ASCII rendering with ascending exponents, e.g. ``-q^-7 + 2*q^-1 + 2*q - q^7``."""
        if not self._coeffs:
            return "0"
        parts: list[str] = []
        for e in sorted(self._coeffs):
            c = self._coeffs[e]
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                qpow = "q" if e == 1 else f"q^{e}"
                body = qpow if mag == 1 else f"{mag}*{qpow}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


def laurent_from_pairs(pairs: Iterable[tuple[int, int]]) -> LaurentPoly:
    """Build a LaurentPoly from (exponent, coefficient) pairs, summing repeats."""
    coeffs: dict[int, int] = {}
    for e, c in pairs:
        coeffs[e] = coeffs.get(e, 0) + c
    return LaurentPoly(coeffs)
