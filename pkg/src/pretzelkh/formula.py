"""Closed-form Khovanov homology of the 3-strand pretzel links P(-l, m, n).

The homology (with rational coefficients) of ``P(-l, m, n)`` with
``2 <= l <= m <= n`` splits as a shifted direct sum of two standard pieces,

    Kh = q^sL t^tL . V[lower] (+) q^sU t^tU . V[upper],

where each piece is built by :func:`pretzelkh.seqcalc.build_space` from a
graded sequence plus exceptional-pair counts, and the four shifts depend
only on (l, m, n) and the orientation pattern of the diagram.  The lower
piece occupies the top two delta-diagonals of the result, the upper piece
the bottom two; for links the overall support is three diagonals, for
knots two.

Orientation patterns name the direction of the two strands in the leftmost
band: ``R``/``L`` for the left strand of the negative band and of the first
positive band respectively.  A knot admits a single pattern, determined by
the parities of (l, m, n); a 2-component link with l odd admits ``LR`` and
``LL``; every diagram with l even is oriented ``RL``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bigraded import BigradedSpace
from .errors import InvalidOrientation, NonIntegralShift
from .seqcalc import (
    EMap,
    GradedSequence,
    add,
    basic_sequence,
    build_space,
    concat,
    constant,
    power,
    reverse,
)

__all__ = [
    "PATTERNS",
    "GradingShifts",
    "PretzelSpec",
    "component_count",
    "admissible_patterns",
    "default_pattern",
    "grading_shifts",
    "lower_summand",
    "upper_summand",
    "summands",
    "exceptional_t",
    "assemble",
    "khovanov",
    "kh_m_equals_l_odd",
    "kh_m_equals_l_even",
    "is_quasi_alternating",
    "reorient_shift",
]

PATTERNS = ("RR", "RL", "LR", "LL")


def _validate_parameters(l: int, m: int, n: int) -> None:
    if not (2 <= l <= m <= n):
        raise ValueError(f"need 2 <= l <= m <= n, got ({l}, {m}, {n})")


def component_count(l: int, m: int, n: int) -> int:
    """1 for at least two odd parameters, else 2 for one odd, else 3."""
    odd = (l % 2) + (m % 2) + (n % 2)
    return 1 if odd >= 2 else 3 - odd


def admissible_patterns(l: int, m: int, n: int) -> tuple[str, ...]:
    """Orientation patterns the diagram of P(-l, m, n) actually supports.

    Knots carry exactly one pattern.  With l odd and m, n both even the two
    components can be oriented two ways, giving LR (the default) or LL.
    With l even only RL occurs.
    """
    _validate_parameters(l, m, n)
    if l % 2 == 0:
        return ("RL",)
    if m % 2 == 0 and n % 2 == 0:
        return ("LR", "LL")
    if m % 2 == 1 and n % 2 == 1:
        return ("RR",)
    if m % 2 == 0:
        return ("LL",)
    return ("LR",)


def default_pattern(l: int, m: int, n: int) -> str:
    return admissible_patterns(l, m, n)[0]


@dataclass(frozen=True)
class GradingShifts:
    """The four grading shifts of one oriented diagram, plus two checks.

    ``delta_max`` is the top delta-diagonal of the assembled homology and
    ``negative_crossings`` the count of negative crossings in the oriented
    diagram (the mirror of the all-positive count under reorientation).
    """

    sigma_lower: int
    tau_lower: int
    sigma_upper: int
    tau_upper: int
    delta_max: int
    negative_crossings: int


def grading_shifts(l: int, m: int, n: int, pattern: str) -> GradingShifts:
    _validate_parameters(l, m, n)
    if pattern not in admissible_patterns(l, m, n):
        raise InvalidOrientation(
            f"pattern {pattern!r} is not admissible for P(-{l},{m},{n}); "
            f"allowed: {', '.join(admissible_patterns(l, m, n))}"
        )
    if pattern == "RR":
        return GradingShifts(
            -2 * m - 2 * n - 1, -m - n,
            4 * l - 2 * m - 2 * n - 1, 2 * l - m - n + 1,
            1, m + n,
        )
    if pattern == "LL":
        return GradingShifts(
            -3 * l - 2 * m + n - 1, -l - m,
            l - 2 * m + n - 1, l - m + 1,
            n - l + 1, l + m,
        )
    if pattern == "LR":
        return GradingShifts(
            -3 * l + m - 2 * n - 1, -l - n,
            l + m - 2 * n - 1, l - n + 1,
            m - l + 1, l + n,
        )
    return GradingShifts(
        n + m - 1, 0,
        4 * l + m + n - 3, 2 * l,
        n + m + 1, 0,
    )


# -- the two summands --------------------------------------------------


def _odd_lower_base(l: int) -> GradedSequence:
    # a_{l-1} . ((l-1)/2)^2 . reverse(a_{l-1}), length 2l
    wing = basic_sequence("a", l - 1)
    return concat(concat(wing, constant((l - 1) // 2, 2)), reverse(wing))


def _even_lower_base(l: int) -> GradedSequence:
    # (1) . c_{l-4} . ((l-2)/2)^3 . (l/2) . reverse(b_l), length 2l + 1.
    # The plateau blocks degenerate below l = 4; the l = 2 member of the
    # family is the explicit 5-column sequence.
    if l == 2:
        return GradedSequence((1, 0, 1, 0, 1))
    middle = concat(basic_sequence("c", l - 4), constant((l - 2) // 2, 3))
    return concat(
        concat(concat(GradedSequence((1,)), middle), GradedSequence((l // 2,))),
        reverse(basic_sequence("b", l)),
    )


def lower_summand(l: int, m: int, n: int) -> tuple[GradedSequence, EMap]:
    """Sequence and exceptional counts of the lower piece of P(-l, m, n).

    Independent of the orientation pattern.  Six cases by the parity of l
    and whether m = l, plus one degenerate overlap: for P(-l, l+1, l+1)
    with l odd, one of the two t = 0 exceptional pairs of the link sits on
    the diagonal shared with the lower piece, extending the generic
    sequence by a tail entry carrying that pair.
    """
    _validate_parameters(l, m, n)
    if l % 2:
        base = _odd_lower_base(l)
        if m == l + 1 and n == l + 1:
            # degenerate overlap: tail entry at index 2l + 2 with its pair
            seq = concat(concat(base, constant(0, 1)), GradedSequence((1,)))
            return seq, EMap({2 * l + 2: 1})
        if m != l:
            return base, EMap()
        # m = l: zero-pad to index l + n, then a marked 1 at l + n + 1
        seq = concat(concat(base, constant(0, n - l)), GradedSequence((1,)))
        return seq, EMap({l + n + 1: 1})
    base = _even_lower_base(l)
    if m != l:
        return base, EMap({1: 1})
    if n == l:
        # bump the final entry; it carries two exceptional pairs
        entries = list(base.as_tuple())
        entries[-1] += 1
        return GradedSequence(entries), EMap({1: 1, 2 * l + 1: 2})
    if n % 2:
        seq = concat(base, power(GradedSequence((0, 1)), (n - l - 1) // 2))
        return seq, EMap({1: 1})
    seq = concat(base, power(GradedSequence((0, 1)), (n - l) // 2))
    return seq, EMap({1: 1, l + n + 1: 1})


def upper_summand(l: int, m: int, n: int) -> tuple[GradedSequence, EMap]:
    """Sequence and exceptional counts of the upper piece of P(-l, m, n).

    Independent of the orientation pattern.  Eight cases by the parities
    of (l, m, n), phrased via g = m - l and h = n - m.  Where the marked
    exceptional positions coincide, the counts collapse or migrate (the
    g = 1, h = 0 pair that moves to the lower piece is handled in
    :func:`lower_summand`); the remaining collisions keep stacked pairs on
    entries large enough to hold them.
    """
    _validate_parameters(l, m, n)
    g, h = m - l, n - m
    lp, mp, np_ = l % 2, m % 2, n % 2
    if lp and mp and np_:
        # (odd, odd, odd): g, h even
        wing = basic_sequence("a", g)
        seq = concat(concat(wing, constant(g // 2, h)), reverse(wing))
        emap = EMap() if seq.is_zero() else EMap({2 * g + h: 1})
        return seq, emap
    if lp and mp:
        # (odd, odd, even): g even, h odd
        seq = concat(
            concat(basic_sequence("a", g), constant(g // 2, h - 1)),
            reverse(basic_sequence("c", g)),
        )
        emap = EMap() if seq.is_zero() else EMap({g + h: 1})
        return seq, emap
    if lp and np_:
        # (odd, even, odd): g, h odd
        pair = GradedSequence(((g + 1) // 2, (g - 1) // 2))
        seq = concat(
            concat(basic_sequence("a", g - 1), power(pair, (h + 1) // 2)),
            reverse(basic_sequence("c", g - 1)),
        )
        return seq, EMap({g: 1})
    if lp:
        # (odd, even, even): g odd, h even
        if g == 1 and h == 0:
            # the second pair of the degenerate overlap lives in the lower
            # piece; see lower_summand
            return GradedSequence((1,)), EMap({1: 1})
        pair = GradedSequence(((g + 1) // 2, (g - 1) // 2))
        seq = concat(
            concat(
                concat(basic_sequence("a", g - 1), power(pair, h // 2)),
                GradedSequence(((g + 1) // 2,)),
            ),
            reverse(basic_sequence("c", g - 1)),
        )
        emap = EMap({g: 2}) if h == 0 else EMap({g: 1, g + h: 1})
        return seq, emap
    if mp and np_:
        # (even, odd, odd): g odd, h even
        pair = GradedSequence(((g + 1) // 2, (g - 1) // 2))
        seq = concat(
            concat(basic_sequence("b", g + 1), power(pair, h // 2)),
            reverse(basic_sequence("c", g - 1)),
        )
        return seq, EMap()
    if mp:
        # (even, odd, even): g, h odd
        pair = GradedSequence(((g + 1) // 2, (g - 1) // 2))
        seq = concat(
            concat(basic_sequence("b", g + 1), power(pair, (h - 1) // 2)),
            reverse(basic_sequence("c", g)),
        )
        return seq, EMap({g + h + 1: 1})
    if np_:
        # (even, even, odd): g even, h odd
        pair = GradedSequence(((g + 2) // 2, max(0, (g - 2) // 2)))
        seq = concat(
            concat(basic_sequence("b", g), power(pair, (h + 1) // 2)),
            reverse(basic_sequence("c", g - 1)),
        )
        return seq, EMap({g + 1: 1})
    # (even, even, even): g, h even
    pair = GradedSequence(((g + 2) // 2, max(0, (g - 2) // 2)))
    seq = concat(
        concat(
            concat(basic_sequence("b", g), power(pair, h // 2)),
            GradedSequence(((g + 2) // 2,)),
        ),
        reverse(basic_sequence("a", g)),
    )
    if g == 0:
        # coincident marks collapse to single pairs
        emap = EMap({1: 1}) if h == 0 else EMap({1: 1, h + 1: 1})
    elif h == 0:
        emap = EMap({g + 1: 2, 2 * g + 1: 1})
    else:
        emap = EMap({g + 1: 1, g + h + 1: 1, 2 * g + h + 1: 1})
    return seq, emap


# -- assembly ----------------------------------------------------------


@dataclass(frozen=True)
class PretzelSpec:
    """An oriented 3-strand pretzel P(-l, m, n): one negative band of l
    crossings followed by positive bands of m and n, with an orientation
    pattern.  Validates 2 <= l <= m <= n and pattern admissibility."""

    l: int
    m: int
    n: int
    pattern: str

    def __post_init__(self) -> None:
        _validate_parameters(self.l, self.m, self.n)
        allowed = admissible_patterns(self.l, self.m, self.n)
        if self.pattern not in allowed:
            raise InvalidOrientation(
                f"pattern {self.pattern!r} is not admissible for "
                f"P(-{self.l},{self.m},{self.n}); allowed: {', '.join(allowed)}"
            )

    @classmethod
    def oriented(cls, l: int, m: int, n: int, pattern: str | None = None) -> "PretzelSpec":
        """Build a spec, filling in the default pattern when none is given."""
        if pattern is None:
            pattern = default_pattern(l, m, n)
        return cls(l, m, n, pattern)

    @property
    def components(self) -> int:
        return component_count(self.l, self.m, self.n)

    @property
    def shifts(self) -> GradingShifts:
        return grading_shifts(self.l, self.m, self.n, self.pattern)

    def __str__(self) -> str:
        return f"P(-{self.l},{self.m},{self.n})_{self.pattern}"


def summands(
    l: int, m: int, n: int, pattern: str | None = None
) -> tuple[BigradedSpace, BigradedSpace]:
    """The shifted (lower, upper) pieces whose direct sum `assemble` returns."""
    spec = PretzelSpec.oriented(l, m, n, pattern)
    sh = spec.shifts
    seq_l, em_l = lower_summand(l, m, n)
    seq_u, em_u = upper_summand(l, m, n)
    return (
        build_space(seq_l, em_l).shift(sh.sigma_lower, sh.tau_lower),
        build_space(seq_u, em_u).shift(sh.sigma_upper, sh.tau_upper),
    )


def exceptional_t(l: int, m: int, n: int, pattern: str | None = None) -> tuple[int, ...]:
    """Sorted multiset of t-gradings holding an exceptional pair.

    Entry i of a summand's exceptional map sits at t = tau + i - 1 once the
    summand is based at (tau, sigma).
    """
    spec = PretzelSpec.oriented(l, m, n, pattern)
    sh = spec.shifts
    out: list[int] = []
    for (_, em), tau in (
        (lower_summand(l, m, n), sh.tau_lower),
        (upper_summand(l, m, n), sh.tau_upper),
    ):
        for index, count in em.items():
            out.extend([tau + index - 1] * count)
    return tuple(sorted(out))


def assemble(l: int, m: int, n: int, pattern: str | None = None) -> BigradedSpace:
    """The full closed-form homology: both pieces built and shifted."""
    lower, upper = summands(l, m, n, pattern)
    return lower + upper


def khovanov(spec: PretzelSpec) -> BigradedSpace:
    return assemble(spec.l, spec.m, spec.n, spec.pattern)


# -- the m = l families, all n >= 0 ------------------------------------


def kh_m_equals_l_odd(l: int, n: int) -> BigradedSpace:
    """Kh of P(-l, l, n) for odd l >= 3 and any n >= 0.

    The sequence is the generic odd-l lower base with one extra unit (and
    its exceptional pair) in spot l + n + 1 -- inside the base when n < l,
    appended after zero-padding when n >= l.  No upper piece.
    """
    if l < 3 or l % 2 == 0:
        raise ValueError(f"need odd l >= 3, got {l}")
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    base = _odd_lower_base(l)
    length = max(base.length, l + n + 1)
    entries = list(base.as_tuple()) + [0] * (length - base.length)
    entries[l + n] += 1
    seq = GradedSequence(entries)
    space = build_space(seq, EMap({l + n + 1: 1}))
    return space.shift(-2 * l - 2 * n - 1, -(l + n))


def _even_c(l: int) -> GradedSequence:
    # (1) . c_{l-4} . ((l-2)/2)^6 . reverse(c_{l-4}) . (0, 1), length 2l + 1
    if l == 2:
        return GradedSequence((1, 0, 0, 0, 1))
    wing = basic_sequence("c", l - 4)
    return concat(
        concat(concat(GradedSequence((1,)), wing), constant((l - 2) // 2, 6)),
        concat(reverse(wing), GradedSequence((0, 1))),
    )


def _correction(n: int) -> GradedSequence:
    # alternating +1/-1 of length n, with a trailing 2 appended when n is even
    entries = [1 if i % 2 == 0 else -1 for i in range(n)]
    if n % 2 == 0:
        entries.append(2)
    return GradedSequence(entries)


def kh_m_equals_l_even(l: int, n: int) -> BigradedSpace:
    """Kh of P(-l, l, n)_RL for even l >= 2 and any n >= 0.

    For n < l the sequence is a fixed base plus an alternating correction
    laid over its second half; for n >= l the general closed form applies.
    """
    if l < 2 or l % 2:
        raise ValueError(f"need even l >= 2, got {l}")
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    if n >= l:
        return assemble(l, l, n, "RL")
    seq = add(_even_c(l), _correction(n), offset=l)
    emap = EMap({1: 1, 2 * l + 1: 1})
    if n % 2 == 0:
        emap = emap.add(l + n + 1, 2)
    return build_space(seq, emap).shift(l + n - 1, 0)


# -- small facts -------------------------------------------------------


def is_quasi_alternating(l: int, m: int, n: int) -> bool:
    """Whether P(-l, m, n) with positive entries is quasi-alternating.

    The criterion is l > min(m, n); under the normalization l <= m <= n
    used here it never holds, which is why the whole family has thick
    (3-diagonal) homology whenever it is a link.
    """
    if min(l, m, n) < 2:
        raise ValueError("parameters must be at least 2")
    return l > min(m, n)


def reorient_shift(linking: int | Fraction) -> tuple[int, int]:
    """Regrading (a, b) with Kh_new = q^a t^b Kh_old when one component of
    a link is reversed, given the linking number of that component with
    the rest: a = -6 lk, b = -2 lk.  Raises NonIntegralShift when the
    input is not a half-integer (the shifts must be whole numbers)."""
    lk = Fraction(linking)
    a, b = -6 * lk, -2 * lk
    if a.denominator != 1 or b.denominator != 1:
        raise NonIntegralShift(f"linking number {linking} gives non-integer shifts")
    return int(a), int(b)
