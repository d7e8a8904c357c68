"""Rational Khovanov homology of 3-strand pretzel links, three ways:
closed-form assembly, cube-of-resolutions computation, and Jones-polynomial
cross-checks, plus the skein-sequence bookkeeping tying them together."""

from .bigraded import BigradedSpace, LaurentPoly, laurent_from_pairs
from .diagram import (
    Diagram,
    OrientedDiagram,
    PretzelDiagram,
    all_orientations,
    mirror_diagram,
    mirror_oriented,
    orient_any,
    orient_pretzel,
    orient_torus2,
    orientable_patterns,
    pretzel_diagram,
    resolve_crossing,
    resolve_oriented,
    torus2_diagram,
)
from .errors import (
    ExceptionalExceedsRank,
    InvalidCrossing,
    InvalidOrientation,
    NegativeEntry,
    NonIntegralShift,
    NotWellStructured,
    PretzelKhError,
    SameComponent,
    TooLarge,
    TooManyComponents,
    UnsplittableSpace,
)
from .formula import (
    GradingShifts,
    PretzelSpec,
    admissible_patterns,
    assemble,
    component_count,
    default_pattern,
    exceptional_t,
    grading_shifts,
    is_quasi_alternating,
    kh_m_equals_l_even,
    kh_m_equals_l_odd,
    khovanov,
    lower_summand,
    reorient_shift,
    summands,
    upper_summand,
)
from .jones import JonesResult, kauffman_jones, pretzel_ll0_jones, torus2_jones
from .khcube import complex_stats, homology, homology_of_pretzel, resolve_state
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
    tilde_space,
)
from .structure import (
    CancellationWitness,
    Decomposition,
    SkeinTriple,
    cancellation_witness,
    check_no_cancellation,
    decompose,
    expected_exceptional_t,
    skein_triple,
    split_L_U,
)

__version__ = "0.1.0"
