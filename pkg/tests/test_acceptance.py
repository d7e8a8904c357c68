"""End-to-end acceptance sweeps.

Each test exercises one of the package's headline guarantees over an
exhaustive parameter range and records a verdict line that the terminal
summary prints as ``CRITERION n: PASS/FAIL``.  All comparisons are exact:
spaces and polynomials are compared with ``==``, never approximately.

The t-gap rule in criterion 5 is known not to hold at the corner family
P(-l, l+1, l+1) with l odd, where the two summands are forced to abut;
that test fails by design and the verdict line names the corner set.
"""

import pytest

from pretzelkh import (
    LaurentPoly,
    PretzelSpec,
    admissible_patterns,
    assemble,
    cancellation_witness,
    check_no_cancellation,
    component_count,
    decompose,
    exceptional_t,
    expected_exceptional_t,
    grading_shifts,
    kauffman_jones,
    kh_m_equals_l_even,
    kh_m_equals_l_odd,
    khovanov,
    mirror_oriented,
    orient_pretzel,
    orient_torus2,
    pretzel_diagram,
    pretzel_ll0_jones,
    skein_triple,
    split_L_U,
)

from conftest import cached_homology, oracle, pretzel_instances


def oriented_instances(total_max, lo=2):
    for (l, m, n) in pretzel_instances(total_max, lo):
        for pattern in admissible_patterns(l, m, n):
            yield l, m, n, pattern


def bounded_instances(each_max):
    """All (l,m,n) with 2 <= l <= m <= n <= each_max."""
    for l in range(2, each_max + 1):
        for m in range(l, each_max + 1):
            for n in range(m, each_max + 1):
                yield (l, m, n)


def equal_parameter_pattern(l, n):
    if l % 2:
        return "RR" if n % 2 else "LR"
    return "RL"


def test_formula_matches_oracle_through_fourteen_crossings(criterion):
    bad = []
    count = 0
    for l, m, n, pattern in oriented_instances(14):
        count += 1
        kh = khovanov(PretzelSpec.oriented(l, m, n, pattern))
        if kh != oracle(l, m, n, pattern):
            bad.append((l, m, n, pattern))
    criterion(
        "1",
        not bad,
        f"closed formula == cube homology on {count} oriented pretzels "
        f"with l+m+n <= 14" + (f"; mismatches {bad}" if bad else ""),
    )
    assert not bad


def test_equal_parameter_closed_forms_match_oracle(criterion):
    bad = []
    count = 0
    for l in (3, 5, 2, 4):
        for n in range(6):
            if 2 * l + n == 15:
                continue  # covered by the slow fifteen-crossing test
            count += 1
            closed = (kh_m_equals_l_odd if l % 2 else kh_m_equals_l_even)(l, n)
            if closed != oracle(l, l, n, equal_parameter_pattern(l, n)):
                bad.append((l, n))
    criterion(
        "2",
        not bad,
        f"m = l closed forms == cube homology for l in 2..5, n in 0..5 "
        f"({count} instances)" + (f"; mismatches {bad}" if bad else ""),
    )
    assert not bad


def test_euler_characteristic_matches_kauffman_bracket(criterion):
    bad = []
    count = 0
    for (l, m, n) in bounded_instances(9):
        for pattern in admissible_patterns(l, m, n):
            count += 1
            od = orient_pretzel(pretzel_diagram(l, m, n), pattern)
            jones = kauffman_jones(od, max_crossings=30).unnormalized
            if assemble(l, m, n, pattern).euler_characteristic() != jones:
                bad.append((l, m, n, pattern))
    product_bad = []
    for l in range(2, 9):
        od = orient_pretzel(pretzel_diagram(l, l, 0), "LR")
        lr = pretzel_ll0_jones(l, "LR")
        if lr != kauffman_jones(od).unnormalized:
            product_bad.append((l, "LR"))
        if pretzel_ll0_jones(l, "RL") != lr * LaurentPoly.monomial(3 * l):
            product_bad.append((l, "RL shift"))
    criterion(
        "3",
        not (bad or product_bad),
        f"graded Euler characteristic == Kauffman bracket on {count} "
        f"oriented pretzels with l, m, n <= 9, plus the P(-l,l,0) product "
        f"formula and its q^(3l) reorientation shift for l in 2..8"
        + (f"; mismatches {bad + product_bad}" if bad or product_bad else ""),
    )
    assert not bad
    assert not product_bad


def test_delta_support_spans_two_adjacent_diagonals(criterion):
    bad = []
    count = 0
    for (l, m, n) in bounded_instances(25):
        for pattern in admissible_patterns(l, m, n):
            count += 1
            v = assemble(l, m, n, pattern)
            dmax = grading_shifts(l, m, n, pattern).delta_max
            support = set(v.delta_support())
            if not (support <= {dmax, dmax - 2, dmax - 4}
                    and max(support) == dmax):
                bad.append((l, m, n, pattern))
    criterion(
        "4",
        not bad,
        f"delta support inside {{d, d-2, d-4}} with top diagonal populated "
        f"on {count} oriented pretzels with l, m, n <= 25"
        + (f"; violations {bad}" if bad else ""),
    )
    assert not bad


def test_summands_split_decompose_and_respect_t_gap(criterion):
    structure_bad = []
    gap_bad = []
    count = 0
    for (l, m, n) in bounded_instances(25):
        for pattern in admissible_patterns(l, m, n):
            count += 1
            v = assemble(l, m, n, pattern)
            dmax = grading_shifts(l, m, n, pattern).delta_max
            try:
                lower, upper = split_L_U(v, dmax)
                assert decompose(lower).space() == lower
                assert decompose(upper).space() == upper
                assert lower + upper == v
            except Exception:
                structure_bad.append((l, m, n, pattern))
                continue
            if m == l or lower.is_zero() or upper.is_zero():
                continue
            gap = min(upper.t_range()) - max(lower.t_range())
            if gap != (1 if l % 2 else -1):
                gap_bad.append((l, m, n, pattern, gap))
    corner = sorted(
        (l, l + 1, l + 1, p, 0)
        for l in range(3, 25, 2)
        for p in admissible_patterns(l, l + 1, l + 1)
    )
    ok = not (structure_bad or gap_bad)
    if not structure_bad and sorted(gap_bad) == corner:
        detail = (
            f"split and round-trip hold on all {count} oriented pretzels "
            f"with l, m, n <= 25, but the t-gap rule fails on the "
            f"{len(corner)} corner instances P(-l,l+1,l+1) with l odd, "
            f"where the summands abut (gap 0)"
        )
    elif ok:
        detail = (
            f"split, round-trip, and t-gap rule hold on all {count} "
            f"oriented pretzels with l, m, n <= 25"
        )
    else:
        detail = (f"unexpected failures: structure {structure_bad[:4]}, "
                  f"gap {gap_bad[:4]}")
    criterion("5", ok, detail)
    assert not structure_bad
    assert sorted(gap_bad) == corner, "unexpected t-gap violations"
    assert not gap_bad  # known red: the corner family above


def test_exceptional_locations_match_linking_numbers(criterion):
    bad = []
    count = 0
    subfamily = 0
    for (l, m, n) in bounded_instances(12):
        for pattern in admissible_patterns(l, m, n):
            count += 1
            od = orient_pretzel(pretzel_diagram(l, m, n), pattern)
            got = tuple(sorted(exceptional_t(l, m, n, pattern)))
            if got != expected_exceptional_t(od):
                bad.append((l, m, n, pattern))
            if (l % 2 and m == l + 1 and pattern == "LL"
                    and od.component_count == 2):
                subfamily += 1
                if 2 * od.linking_number(0, 1) != n - l - 1:
                    bad.append((l, m, n, "LL linking"))
    criterion(
        "6",
        not bad,
        f"exceptional-pair t-locations == 2 * linking sums on {count} "
        f"oriented pretzels with l, m, n <= 12, including lk = (n-l-1)/2 "
        f"on the {subfamily} two-component P(-l,l+1,n) LL instances"
        + (f"; mismatches {bad}" if bad else ""),
    )
    assert not bad


def skein_steps():
    # unknotting the rightmost band when the first two match
    for l in range(2, 7):
        for n in range(1, 15 - 2 * l):
            if l % 2:
                yield (l, l, n, equal_parameter_pattern(l, n), 2, -1, -1)
            else:
                yield (l, l, n, "RL", 2, 1, l + n - 1)
    # the same reduction one column over, even l
    for l in (2, 4):
        for n in range(1, 14 - 2 * l):
            yield (l, l + 1, n, "RL", 2, 1, l + n - 1)
    # shrinking the middle band, odd l
    for (l, m, n) in pretzel_instances(14):
        if l % 2 == 0 or m == l:
            continue
        for pattern in admissible_patterns(l, m, n):
            if pattern == "LL":
                yield (l, m, n, pattern, 1, -1, n - l - 1)
            elif pattern == "RR":
                yield (l, m, n, pattern, 1, -1, l - n - 1)
            elif pattern == "LR" and m > l + 1:
                yield (l, m, n, pattern, 1, 1, m - n - 1)


def test_surgery_triples_admit_cancellation_witnesses(criterion):
    bad = []
    count = 0
    zero_checked = 0
    for l, m, n, pattern, band, sign, eps in skein_steps():
        count += 1
        pd = pretzel_diagram(l, m, n)
        od = orient_pretzel(pd, pattern)
        tri = skein_triple(od, pd.band_crossings[band][0], cached_homology)
        witness = cancellation_witness(tri.v, tri.w, tri.x)
        if tri.sign != sign or tri.epsilon != eps or witness is None:
            bad.append((l, m, n, pattern, tri.sign, tri.epsilon,
                        witness is None))
            continue
        try:
            clean = check_no_cancellation(tri.v, tri.w, tri.x)
        except ValueError:
            continue  # supports too wide for the diagonal-count argument
        if clean:
            zero_checked += 1
            if not witness.is_zero:
                bad.append((l, m, n, pattern, "nonzero witness"))
    if zero_checked:
        tail = (f"; {zero_checked} steps ruled cancellation-free by "
                f"exceptional counting have the forced zero witness")
    else:
        tail = ("; no step meets the thin-support hypothesis of the "
                "counting rule (unoriented resolutions are wide unlinks), "
                "which the unit fixtures exercise instead")
    criterion(
        "7",
        not bad,
        f"all {count} surgery steps on bands of P(-l,m,n) with l+m+n <= 14 "
        f"have the predicted crossing sign and shift exponent and admit a "
        f"cancellation witness" + tail
        + (f"; failures {bad}" if bad else ""),
    )
    assert not bad


def test_mirror_reverses_both_gradings(criterion):
    bad = []
    count = 0
    for l, m, n, pattern in oriented_instances(10):
        count += 1
        od = orient_pretzel(pretzel_diagram(l, m, n), pattern)
        if cached_homology(mirror_oriented(od)) != oracle(l, m, n, pattern).mirror():
            bad.append((l, m, n, pattern))
    criterion(
        "8",
        not bad,
        f"mirror homology == (i,j) -> (-i,-j) relabeling on {count} "
        f"oriented pretzels with l+m+n <= 10"
        + (f"; mismatches {bad}" if bad else ""),
    )
    assert not bad


def test_differential_squares_to_zero_and_conventions(criterion):
    bad = []
    d2_count = 0
    for l, m, n, pattern in oriented_instances(11):
        d2_count += 1
        checked = cached_homology(
            orient_pretzel(pretzel_diagram(l, m, n), pattern), check_d2=True
        )
        if checked != oracle(l, m, n, pattern):
            bad.append((l, m, n, pattern, "d2"))
    unknot = cached_homology(orient_torus2(1))
    if unknot.as_dict() != {(0, -1): 1, (0, 1): 1}:
        bad.append(("unknot", dict(unknot.as_dict())))
    sign_count = 0
    for (l, m, n) in bounded_instances(12):
        for pattern in admissible_patterns(l, m, n):
            sign_count += 1
            od = orient_pretzel(pretzel_diagram(l, m, n), pattern)
            want = grading_shifts(l, m, n, pattern).negative_crossings
            if od.n_minus != want:
                bad.append((l, m, n, pattern, "n-"))
    criterion(
        "9",
        not bad,
        f"d^2 == 0 verified on {d2_count} complexes with l+m+n <= 11, the "
        f"unknot has rank one in degrees (0, +-1), and the negative-crossing "
        f"count matches the orientation table on {sign_count} instances "
        f"with l, m, n <= 12" + (f"; failures {bad}" if bad else ""),
    )
    assert not bad


@pytest.mark.slow
def test_fifteen_crossing_knot_matches_oracle(criterion):
    ok = khovanov(PretzelSpec.oriented(3, 5, 7, "RR")) == oracle(3, 5, 7, "RR")
    criterion("1", ok, "P(-3,5,7) at 15 crossings "
              + ("matches" if ok else "MISMATCHES"))
    assert ok


@pytest.mark.slow
def test_fifteen_crossing_equal_parameters_match_oracle(criterion):
    ok = kh_m_equals_l_odd(5, 5) == oracle(5, 5, 5, "RR")
    criterion("2", ok, "P(-5,5,5) at 15 crossings "
              + ("matches" if ok else "MISMATCHES"))
    assert ok
