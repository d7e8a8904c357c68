"""Finite integer sequences and the spaces they generate.

The closed formulas in this package are phrased in terms of short integer
sequences combined by concatenation, repetition, reversal and offset
addition, together with a map marking "exceptional" indices.  A sequence
entry a_i records how many generator pairs sit in the column t = i - 1:
each plain unit contributes a knight-move pair, spanning (t, q) and
(t + 1, q + 4); each exceptional unit contributes a vertical pair,
spanning (t, q) and (t, q + 2).  Every pair keeps the space inside the
two diagonals delta = q - 2t in {0, 2} before any overall shift.

Sequences are dense: explicit zero entries pad real length, so (1,) and
(1, 0) are different sequences (they concatenate differently).
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .bigraded import BigradedSpace
from .errors import ExceptionalExceedsRank, NegativeEntry

__all__ = [
    "GradedSequence",
    "EMap",
    "basic_sequence",
    "concat",
    "power",
    "reverse",
    "add",
    "constant",
    "tilde_space",
    "build_space",
]


class GradedSequence:
    """Immutable finite integer sequence with an explicit start index.

    Formula sequences start at 1; sequences read off a decomposition keep
    their actual homological start.  Entries may be negative in raw
    arithmetic (offset addition of a correction term); the space
    constructors reject negatives.
    """

    __slots__ = ("_entries", "_start")

    def __init__(self, entries: Iterable[int] = (), start: int = 1):
        self._entries = tuple(int(v) for v in entries)
        self._start = int(start)

    @property
    def start(self) -> int:
        return self._start

    @property
    def length(self) -> int:
        return len(self._entries)

    def as_tuple(self) -> tuple[int, ...]:
        return self._entries

    def value(self, index: int) -> int:
        """Entry at the given index; zero outside the stored range."""
        k = index - self._start
        if 0 <= k < len(self._entries):
            return self._entries[k]
        return 0

    def indices(self) -> range:
        return range(self._start, self._start + len(self._entries))

    def total(self) -> int:
        return sum(self._entries)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self._entries)

    def rebase(self, start: int) -> "GradedSequence":
        return GradedSequence(self._entries, start)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedSequence):
            return NotImplemented
        return self._entries == other._entries and self._start == other._start

    def __hash__(self) -> int:
        return hash((self._entries, self._start))

    def __len__(self) -> int:
        return len(self._entries)

    def __repr__(self) -> str:
        if self._start == 1:
            return f"GradedSequence({self._entries!r})"
        return f"GradedSequence({self._entries!r}, start={self._start})"

    def literal(self) -> str:
        """Render as a tuple literal, e.g. ``(1,0,2,1)``; empty is ``()``."""
        return "(" + ",".join(str(v) for v in self._entries) + ")"

    @classmethod
    def parse(cls, text: str, start: int = 1) -> "GradedSequence":
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise ValueError(f"not a sequence literal: {text!r}")
        inner = body[1:-1].strip().rstrip(",")
        if not inner:
            return cls((), start)
        return cls((int(p) for p in inner.split(",")), start)


class EMap:
    """Exceptional-pair counts by sequence index: a map {index: count > 0}."""

    __slots__ = ("_counts",)

    def __init__(self, counts: Mapping[int, int] | None = None):
        clean: dict[int, int] = {}
        if counts:
            for i, c in counts.items():
                if c < 0:
                    raise NegativeEntry(f"exceptional count {c} at index {i}")
                if c:
                    clean[int(i)] = int(c)
        self._counts = clean

    def get(self, index: int) -> int:
        return self._counts.get(index, 0)

    def items(self):
        return iter(sorted(self._counts.items()))

    def as_dict(self) -> dict[int, int]:
        return dict(self._counts)

    def is_zero(self) -> bool:
        return not self._counts

    def total(self) -> int:
        return sum(self._counts.values())

    def add(self, index: int, count: int = 1) -> "EMap":
        out = dict(self._counts)
        out[index] = out.get(index, 0) + count
        return EMap(out)

    def merge(self, other: "EMap") -> "EMap":
        out = dict(self._counts)
        for i, c in other._counts.items():
            out[i] = out.get(i, 0) + c
        return EMap(out)

    def rebase(self, offset: int) -> "EMap":
        """Shift every index by the given offset."""
        return EMap({i + offset: c for i, c in self._counts.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EMap):
            return NotImplemented
        return self._counts == other._counts

    def __hash__(self) -> int:
        return hash(frozenset(self._counts.items()))

    def __bool__(self) -> bool:
        return bool(self._counts)

    def __repr__(self) -> str:
        return f"EMap({self._counts!r})"

    def literal(self) -> str:
        """Render as ``{3:1,9:2}`` with sorted indices; empty is ``{}``."""
        return "{" + ",".join(f"{i}:{c}" for i, c in sorted(self._counts.items())) + "}"

    @classmethod
    def parse(cls, text: str) -> "EMap":
        body = text.strip()
        if not (body.startswith("{") and body.endswith("}")):
            raise ValueError(f"not an exceptional-map literal: {text!r}")
        inner = body[1:-1].strip()
        if not inner:
            return cls()
        counts: dict[int, int] = {}
        for item in inner.split(","):
            i, c = item.split(":")
            counts[int(i)] = counts.get(int(i), 0) + int(c)
        return cls(counts)


# -- the three basic families -----------------------------------------


def basic_sequence(name: str, k: int) -> GradedSequence:
    """First k entries of one of the three stock patterns.

    ``a``: 1, 0, 2, 1, 3, 2, ...   (odd spot 2j-1 holds j, even spot 2j holds j-1)
    ``b``: 1, 0, 2, 0, 3, 1, 4, 2, ...   (even spot 2j holds max(0, j-2))
    ``c``: 1, 1, 2, 2, 3, 3, ...   (spot i holds ceil(i/2))

    k <= 0 yields the empty sequence.
    """
    if k <= 0:
        return GradedSequence()
    entries = []
    for i in range(1, k + 1):
        if name == "a":
            entries.append((i + 1) // 2 if i % 2 else i // 2 - 1)
        elif name == "b":
            entries.append((i + 1) // 2 if i % 2 else max(0, i // 2 - 2))
        elif name == "c":
            entries.append((i + 1) // 2)
        else:
            raise ValueError(f"unknown basic sequence {name!r}")
    return GradedSequence(entries)


# -- combinators ------------------------------------------------------


def _require_initial(seq: GradedSequence, op: str) -> None:
    if seq.start != 1:
        raise ValueError(f"{op} requires a sequence starting at index 1")


def concat(first: GradedSequence, second: GradedSequence) -> GradedSequence:
    _require_initial(first, "concat")
    _require_initial(second, "concat")
    return GradedSequence(first.as_tuple() + second.as_tuple())


def power(seq: GradedSequence, k: int) -> GradedSequence:
    """The sequence repeated k times end to end; k = 0 gives the empty sequence."""
    _require_initial(seq, "power")
    if k < 0:
        raise ValueError("negative repetition count")
    return GradedSequence(seq.as_tuple() * k)


def reverse(seq: GradedSequence) -> GradedSequence:
    _require_initial(seq, "reverse")
    return GradedSequence(seq.as_tuple()[::-1])


def add(first: GradedSequence, second: GradedSequence, offset: int = 0) -> GradedSequence:
    """Entrywise sum with the second sequence displaced to start at spot offset+1.

    The result is long enough to hold both parts; entries may come out
    negative (the correction patterns subtract).
    """
    _require_initial(first, "add")
    _require_initial(second, "add")
    if offset < 0:
        raise ValueError("negative offset")
    length = max(first.length, offset + second.length)
    entries = [0] * length
    for j, v in enumerate(first.as_tuple()):
        entries[j] = v
    for j, v in enumerate(second.as_tuple()):
        entries[offset + j] += v
    return GradedSequence(entries)


def constant(value: int, k: int) -> GradedSequence:
    """k copies of a single value; the workhorse for plateau blocks."""
    if k < 0:
        raise ValueError("negative length")
    return GradedSequence((value,) * k)


# -- spaces from sequences --------------------------------------------


def tilde_space(seq: GradedSequence) -> BigradedSpace:
    """Single-diagonal layout: entry at index i sits at (t, q) = (i-1, 2(i-1)).

    The first entry of a start-1 sequence lands at the origin and the
    whole space lives on the diagonal delta = 0.
    """
    dims: dict[tuple[int, int], int] = {}
    for i in seq.indices():
        v = seq.value(i)
        if v < 0:
            raise NegativeEntry(f"sequence entry {v} at index {i}")
        if v:
            dims[(i - 1, 2 * (i - 1))] = v
    return BigradedSpace(dims)


def build_space(seq: GradedSequence, exceptional: EMap | None = None) -> BigradedSpace:
    """Two-diagonal layout from a sequence and its exceptional indices.

    Each non-exceptional unit at index i spans the knight-move pair
    (i-1, 2(i-1)) and (i, 2(i-1)+4); each exceptional unit spans the
    vertical pair (i-1, 2(i-1)) and (i-1, 2(i-1)+2).  The result lives in
    the diagonals delta in {0, 2} and has total dimension 2 * sum(seq).
    """
    emap = exceptional or EMap()
    for i, c in emap.items():
        if c > seq.value(i):
            raise ExceptionalExceedsRank(
                f"{c} exceptional pairs at index {i} but entry is {seq.value(i)}"
            )
    dims: dict[tuple[int, int], int] = {}

    def put(t: int, q: int, d: int) -> None:
        if d:
            dims[(t, q)] = dims.get((t, q), 0) + d

    for i in seq.indices():
        v = seq.value(i)
        if v < 0:
            raise NegativeEntry(f"sequence entry {v} at index {i}")
        e = emap.get(i)
        t, q = i - 1, 2 * (i - 1)
        put(t, q, v - e)          # knight lower
        put(t + 1, q + 4, v - e)  # knight upper
        put(t, q, e)              # exceptional lower
        put(t, q + 2, e)          # exceptional upper
    return BigradedSpace(dims)
