"""Structural analysis of bigraded spaces and skein exact sequences.

A well-structured space is a direct sum of knight-move pairs (one
generator at (t, q), one at (t+1, q+4)) and exceptional pairs ((t, q)
and (t, q+2)); it lives in two adjacent delta = q - 2t diagonals, and
``decompose`` recovers the per-t ranks and exceptional counts.  A space
spanning three diagonals splits into a lower summand (top two diagonals)
and an upper summand (bottom two) via ``split_L_U``.

The skein side: resolving one crossing of an oriented diagram yields a
long exact sequence relating the homology of the diagram and its two
resolutions.  ``skein_triple`` packages the three spaces with the
grading shifts already applied, so the connecting map raises t by one
and preserves q; ``cancellation_witness`` solves for the per-bigrading
ranks of that map, and ``check_no_cancellation`` recognizes triples
whose exceptional-pair counts force the map to vanish.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .bigraded import BigradedSpace
from .diagram import OrientedDiagram, orient_any, resolve_crossing, resolve_oriented
from .errors import (
    InvalidCrossing,
    NotWellStructured,
    TooManyComponents,
    UnsplittableSpace,
)
from .seqcalc import EMap, GradedSequence, build_space

__all__ = [
    "Decomposition",
    "CancellationWitness",
    "SkeinTriple",
    "decompose",
    "split_L_U",
    "expected_exceptional_t",
    "cancellation_witness",
    "skein_triple",
    "check_no_cancellation",
]


@dataclass(frozen=True)
class Decomposition:
    """Ranks and exceptional counts of a well-structured space.

    ``sequence`` and ``exceptional`` are indexed by the actual
    t-gradings of the lower diagonal; ``base`` is the (t, q) position of
    the lowest generator.
    """

    sequence: GradedSequence
    exceptional: EMap
    base: tuple[int, int]

    def space(self) -> BigradedSpace:
        """Rebuild the space this decomposition was extracted from."""
        t0, q0 = self.base
        return build_space(self.sequence, self.exceptional).shift(q0 - 2 * t0 + 2, 1)

    def e_locations(self) -> tuple[int, ...]:
        """Sorted multiset of t-gradings holding an exceptional pair."""
        out: list[int] = []
        for t, c in self.exceptional.items():
            out.extend([t] * c)
        return tuple(sorted(out))


class CancellationWitness:
    """Per-bigrading counts of eliminated horizontal pairs.

    ``counts[(t, q)] = c`` means c pairs, one generator of V at (t, q)
    and one of W at (t+1, q), cancelled out of the direct sum.
    """

    def __init__(self, counts: dict[tuple[int, int], int] | None = None):
        self.counts = {key: c for key, c in (counts or {}).items() if c}

    @property
    def is_zero(self) -> bool:
        return not self.counts

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CancellationWitness):
            return NotImplemented
        return self.counts == other.counts

    def __repr__(self) -> str:
        return f"CancellationWitness({self.counts!r})"


@dataclass(frozen=True)
class SkeinTriple:
    """One resolved crossing's exact sequence, shifts already applied.

    The connecting map runs V -> W raising t by exactly 1 at fixed q.
    ``oriented_resolution`` keeps the flow of the original diagram;
    ``unoriented_resolution`` carries an arbitrary orientation, and
    epsilon is its negative-crossing excess over the original.
    """

    w: BigradedSpace
    x: BigradedSpace
    v: BigradedSpace
    epsilon: int
    sign: int
    oriented_resolution: OrientedDiagram
    unoriented_resolution: OrientedDiagram


def _diagonal_slices(v: BigradedSpace, delta: int) -> dict[int, int]:
    return {t: v.dim(t, 2 * t + delta) for t in range(*_closed_t_range(v))}


def _closed_t_range(v: BigradedSpace) -> tuple[int, int]:
    lo, hi = v.t_range()
    return lo, hi + 1


def decompose(v: BigradedSpace) -> Decomposition:
    """Extract per-t ranks and exceptional counts, or fail loudly.

    Runs the forced recurrence from both ends (top-down from the highest
    t, bottom-up from the lowest) and insists the two agree; any
    negative count, count above the rank, or unmatched dimension means
    the space is not a sum of knight and exceptional pairs.
    """
    if v.is_zero():
        return Decomposition(GradedSequence(), EMap(), (0, 0))
    deltas = v.delta_support()
    if len(deltas) != 2 or deltas[1] - deltas[0] != 2:
        raise NotWellStructured(
            f"delta support {deltas} is not two adjacent diagonals"
        )
    d0 = deltas[0]
    t_lo, t_hi = v.t_range()
    low = _diagonal_slices(v, d0)
    up = _diagonal_slices(v, d0 + 2)

    def fail(reason: str):
        raise NotWellStructured(f"{reason} (delta {d0}, t in [{t_lo},{t_hi}])")

    # bottom-up: up(t) = (low(t-1) - E(t-1)) + E(t), rising t
    e_bottom: dict[int, int] = {}
    prev = 0
    for t in range(t_lo, t_hi + 1):
        e = up[t] - (low.get(t - 1, 0) - e_bottom.get(t - 1, 0))
        if e < 0:
            fail(f"negative exceptional count at t={t}")
        if e > low[t]:
            fail(f"exceptional count {e} above rank {low[t]} at t={t}")
        e_bottom[t] = e
        prev = e
    if low[t_hi] != prev:
        fail(f"unmatched knight partners above t={t_hi}")

    # top-down: E(t) = low(t) - up(t+1) + E(t+1), falling t
    e_top: dict[int, int] = {}
    nxt = 0
    for t in range(t_hi, t_lo - 1, -1):
        e = low[t] - up.get(t + 1, 0) + nxt
        if e < 0:
            fail(f"negative exceptional count at t={t}")
        if e > low[t]:
            fail(f"exceptional count {e} above rank {low[t]} at t={t}")
        e_top[t] = e
        nxt = e
    if up[t_lo] != nxt:
        fail(f"unmatched vertical partners at t={t_lo}")

    if e_top != e_bottom:
        fail("the two extraction directions disagree")

    values = [low[t] for t in range(t_lo, t_hi + 1)]
    while values and values[-1] == 0:
        values.pop()
    return Decomposition(
        GradedSequence(values, start=t_lo),
        EMap({t: e for t, e in e_bottom.items() if e}),
        (t_lo, 2 * t_lo + d0),
    )


def split_L_U(
    v: BigradedSpace, delta_max: int
) -> tuple[BigradedSpace, BigradedSpace]:
    """Split a three-diagonal space into its two well-structured halves.

    The upper summand owns the bottom diagonal outright; its partners on
    the middle diagonal are forced in one rising-t sweep (each middle
    slice keeps just enough for the lower summand to cover the top slice
    one step later), and the lower summand takes the rest.  Both halves
    must then decompose, else UnsplittableSpace.
    """
    deltas = set(v.delta_support())
    allowed = {delta_max, delta_max - 2, delta_max - 4}
    if not deltas <= allowed:
        raise UnsplittableSpace(
            f"delta support {sorted(deltas)} outside {sorted(allowed)}"
        )
    if v.is_zero():
        return BigradedSpace({}), BigradedSpace({})
    t_lo, t_hi = v.t_range()
    lower: dict[tuple[int, int], int] = {}
    upper: dict[tuple[int, int], int] = {}
    prev_a_l = prev_e_l = 0
    prev_a_u = prev_e_u = 0
    for t in range(t_lo, t_hi + 1):
        top = v.dim(t, 2 * t + delta_max)
        mid = v.dim(t, 2 * t + delta_max - 2)
        bot = v.dim(t, 2 * t + delta_max - 4)
        carry = prev_a_u - prev_e_u
        e_l = top - (prev_a_l - prev_e_l)
        if e_l < 0:
            raise UnsplittableSpace(f"top slice too small at t={t}")
        e_u = mid - carry - v.dim(t + 1, 2 * (t + 1) + delta_max) - e_l
        if e_u < 0:
            e_u = 0
        a_l = mid - carry - e_u
        if e_u > bot or a_l < e_l:
            raise UnsplittableSpace(f"middle slice over-committed at t={t}")
        if top:
            lower[(t, 2 * t + delta_max)] = top
        if a_l:
            lower[(t, 2 * t + delta_max - 2)] = a_l
        if carry + e_u:
            upper[(t, 2 * t + delta_max - 2)] = carry + e_u
        if bot:
            upper[(t, 2 * t + delta_max - 4)] = bot
        prev_a_l, prev_e_l = a_l, e_l
        prev_a_u, prev_e_u = bot, e_u
    l_space = BigradedSpace(lower)
    u_space = BigradedSpace(upper)
    try:
        decompose(l_space)
        decompose(u_space)
    except NotWellStructured as exc:
        raise UnsplittableSpace(f"forced split is not well-structured: {exc}")
    return l_space, u_space


def expected_exceptional_t(od: OrientedDiagram) -> tuple[int, ...]:
    """Predicted t-gradings of the exceptional pairs, from linking numbers.

    A knot contributes one pair at t = 0; each extra component doubles
    the count, the new locations sitting at twice the sums of pairwise
    linking numbers against a fixed component.
    """
    k = od.component_count
    if k == 1:
        return (0,)
    if k == 2:
        return tuple(sorted((0, int(2 * od.linking_number(0, 1)))))
    if k == 3:
        lk01 = od.linking_number(0, 1)
        lk02 = od.linking_number(0, 2)
        lk12 = od.linking_number(1, 2)
        locations = [
            0,
            int(2 * (lk01 + lk02)),
            int(2 * (lk01 + lk12)),
            int(2 * (lk02 + lk12)),
        ]
        return tuple(sorted(locations))
    raise TooManyComponents(f"{k} components (at most 3 supported)")


def cancellation_witness(
    v: BigradedSpace, w: BigradedSpace, x: BigradedSpace
) -> CancellationWitness | None:
    """Eliminated-pair counts explaining X as V + W, or None.

    Cancellation pairs a V generator at (t, q) with a W generator at
    (t+1, q), so at fixed q the counts satisfy a forced chain
    c(t) = dim V + dim W - dim X - c(t-1); the chain must stay within
    0 <= c(t) <= min(dim V(t,q), dim W(t+1,q)) and close at both ends.
    """
    qs = {q for (_, q) in v.support()} | {q for (_, q) in w.support()}
    qs |= {q for (_, q) in x.support()}
    counts: dict[tuple[int, int], int] = {}
    for q in qs:
        ts = [t for (t, qq) in v.support() if qq == q]
        ts += [t for (t, qq) in w.support() if qq == q]
        ts += [t for (t, qq) in x.support() if qq == q]
        prev = 0
        for t in range(min(ts), max(ts) + 1):
            c = v.dim(t, q) + w.dim(t, q) - x.dim(t, q) - prev
            if c < 0 or c > v.dim(t, q) or c > w.dim(t + 1, q):
                return None
            if c:
                counts[(t, q)] = c
            prev = c
        if prev:
            return None
    return CancellationWitness(counts)


def skein_triple(
    od: OrientedDiagram,
    crossing: int,
    kh: Callable[[OrientedDiagram], BigradedSpace],
    *,
    orient_u: OrientedDiagram | None = None,
) -> SkeinTriple:
    """The exact-sequence triple of one resolved crossing.

    ``kh`` supplies the homology of every oriented diagram involved.
    The 0-smoothing of a positive crossing and the 1-smoothing of a
    negative one keep the original flow; the other smoothing needs a
    fresh orientation — pass ``orient_u`` to choose one, otherwise each
    of its strands runs forward from its lowest edge.
    """
    d = od.diagram
    if not 0 <= crossing < len(d.crossings):
        raise InvalidCrossing(f"crossing {crossing} out of range")
    sign = od.signs[crossing]
    o_bit = 0 if sign > 0 else 1
    od_o = resolve_oriented(od, crossing, o_bit)
    if orient_u is None:
        od_u = orient_any(resolve_crossing(d, crossing, 1 - o_bit))
    else:
        if orient_u.diagram != resolve_crossing(d, crossing, 1 - o_bit):
            raise InvalidCrossing(
                "orient_u is not an orientation of the unoriented resolution"
            )
        od_u = orient_u
    epsilon = od_u.n_minus - od.n_minus
    x = kh(od)
    kh_o = kh(od_o)
    kh_u = kh(od_u)
    if sign > 0:
        w = kh_u.shift(3 * epsilon + 2, epsilon + 1)
        v = kh_o.shift(1, 0)
    else:
        w = kh_o.shift(-1, 0)
        v = kh_u.shift(3 * epsilon + 1, epsilon)
    return SkeinTriple(w, x, v, epsilon, sign, od_o, od_u)


def check_no_cancellation(
    v: BigradedSpace, w: BigradedSpace, x: BigradedSpace
) -> bool:
    """True when exceptional-pair counts rule out any cancellation.

    Requires V and W to share their two adjacent diagonals.  When X has
    at least as many exceptional pairs at every t as V and W combined,
    nothing can have cancelled, and X is verified to equal V + W.
    """
    shared = set(v.delta_support()) | set(w.delta_support())
    if len(shared) > 2 or (len(shared) == 2 and max(shared) - min(shared) != 2):
        raise ValueError("V and W do not share two adjacent diagonals")
    dec_v = decompose(v)
    dec_w = decompose(w)
    dec_x = decompose(x)
    for t in set(dec_v.exceptional.as_dict()) | set(dec_w.exceptional.as_dict()):
        if dec_x.exceptional.get(t) < dec_v.exceptional.get(t) + dec_w.exceptional.get(t):
            return False
    if x != v + w:
        raise ValueError(
            "exceptional counts rule out cancellation but X != V + W; "
            "the triple is not exact"
        )
    return True
