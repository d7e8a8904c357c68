"""Command-line interface: compute, compare, verify, and render.

Verbs:

* ``formula``  -- closed-form homology of P(-l,m,n)
* ``oracle``   -- cube-of-resolutions homology of a pretzel or a diagram file
* ``jones``    -- unnormalized Jones polynomial (closed form where one exists)
* ``compare``  -- formula vs oracle, exit 0 iff they agree
* ``verify``   -- run a named check suite, one JSON record per line
* ``grid``     -- render homology as a t/q grid

Exit codes: 0 on success, 1 on a mismatch or a failed check, 2 on a usage
error.  Identical argument vectors produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable

from .bigraded import BigradedSpace
from .diagram import (
    Diagram,
    OrientedDiagram,
    all_orientations,
    mirror_oriented,
    orient_any,
    orient_pretzel,
    orient_torus2,
    pretzel_diagram,
)
from .errors import PretzelKhError
from .formula import (
    admissible_patterns,
    assemble,
    default_pattern,
    exceptional_t,
    grading_shifts,
)
from .jones import kauffman_jones, pretzel_ll0_jones, torus2_jones
from .khcube import homology
from .structure import (
    cancellation_witness,
    decompose,
    expected_exceptional_t,
    skein_triple,
    split_L_U,
)

__all__ = ["main", "render_grid", "run"]

SUITES = (
    "formula-vs-oracle",
    "euler",
    "delta-support",
    "decomposition",
    "linking",
    "skein",
    "jones-closed-form",
    "mirror",
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse prints and exits on its own; route everything through _UsageError
    # so run() can return (2, message) without touching the process.
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def render_grid(v: BigradedSpace) -> str:
    """Text grid of dimensions: q decreasing down the rows, t increasing
    across the columns.

    Rows step by 2 when every generator sits in the same q-parity (the usual
    situation), by 1 otherwise; empty cells stay blank.
    """
    if v.is_zero():
        return "(zero space)\n"
    ts = sorted({t for (t, _) in v.support()})
    qs = sorted({q for (_, q) in v.support()})
    t_lo, t_hi = ts[0], ts[-1]
    q_lo, q_hi = qs[0], qs[-1]
    step = 2 if len({q % 2 for q in qs}) == 1 else 1
    cols = list(range(t_lo, t_hi + 1))
    rows = list(range(q_hi, q_lo - 1, -step))
    width = max(
        2,
        max(len(str(t)) for t in cols),
        max(len(str(v.dim(t, q))) for (t, q) in v.support()),
    )
    q_width = max(len("q\\t"), max(len(str(q)) for q in rows))
    out = []
    header = "q\\t".rjust(q_width) + " |"
    for t in cols:
        header += " " + str(t).rjust(width)
    out.append(header)
    out.append("-" * q_width + "-+" + "-" * (len(cols) * (width + 1)))
    for q in rows:
        line = str(q).rjust(q_width) + " |"
        for t in cols:
            d = v.dim(t, q)
            line += " " + (str(d) if d else "").rjust(width)
        out.append(line.rstrip())
    return "\n".join(out) + "\n"


def _format_space(v: BigradedSpace, fmt: str) -> str:
    if fmt == "json":
        return v.to_json() + "\n"
    if fmt == "grid":
        return render_grid(v)
    return v.poincare() + "\n"


def _parse_pretzel(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise _UsageError(f"--pretzel wants three integers L,M,N, got {text!r}")
    try:
        l, m, n = (int(p) for p in parts)
    except ValueError:
        raise _UsageError(f"--pretzel wants three integers L,M,N, got {text!r}")
    return l, m, n


def _formula_space(l: int, m: int, n: int, orient: str | None) -> BigradedSpace:
    if l < 2:
        raise _UsageError("l must be ≥ 2")
    if not l <= m <= n:
        raise _UsageError(f"need l ≤ m ≤ n, got ({l},{m},{n})")
    return assemble(l, m, n, orient)


def _oriented_pretzel(
    l: int, m: int, n: int, orient: str | None
) -> OrientedDiagram:
    pd = pretzel_diagram(l, m, n)
    if orient is None and 2 <= l <= m <= n:
        orient = default_pattern(l, m, n)
    if orient is not None:
        return orient_pretzel(pd, orient)
    return orient_any(pd.diagram)


def _load_diagram(path: str) -> OrientedDiagram:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = fh.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc}")
    return orient_any(Diagram.from_json(payload))


def _oracle_input(args) -> OrientedDiagram:
    if args.pretzel is not None:
        l, m, n = _parse_pretzel(args.pretzel)
        return _oriented_pretzel(l, m, n, getattr(args, "orient", None))
    return _load_diagram(args.pd)


# ---------------------------------------------------------------------------
# verify suites


def _record(spec: str, check: str, ok: bool, details: str) -> dict:
    return {"spec": spec, "check": check, "pass": ok, "details": details}


def _instances(total_max: int) -> list[tuple[int, int, int]]:
    out = []
    for l in range(2, total_max // 3 + 1):
        for m in range(l, (total_max - l) // 2 + 1):
            for n in range(m, total_max - l - m + 1):
                out.append((l, m, n))
    return out


def _diff_summary(a: BigradedSpace, b: BigradedSpace) -> str:
    keys = sorted(set(a.support()) | set(b.support()))
    bad = [(t, q) for (t, q) in keys if a.dim(t, q) != b.dim(t, q)]
    shown = ", ".join(
        f"(t={t},q={q}): {a.dim(t, q)} vs {b.dim(t, q)}" for (t, q) in bad[:4]
    )
    more = "" if len(bad) <= 4 else f" and {len(bad) - 4} more"
    return f"differs at {shown}{more}"


def _suite_formula_vs_oracle(total_max: int, cap: int) -> list[dict]:
    records = []
    for l, m, n in _instances(total_max):
        for pattern in admissible_patterns(l, m, n):
            name = f"P(-{l},{m},{n}):{pattern}"
            left = assemble(l, m, n, pattern)
            right = homology(
                orient_pretzel(pretzel_diagram(l, m, n), pattern),
                max_crossings=cap,
            )
            ok = left == right
            details = (
                f"{left.total_dim} generators"
                if ok
                else _diff_summary(left, right)
            )
            records.append(_record(name, "formula-vs-oracle", ok, details))
    return records


def _suite_euler(total_max: int, cap: int) -> list[dict]:
    records = []
    for l, m, n in _instances(total_max):
        for pattern in admissible_patterns(l, m, n):
            name = f"P(-{l},{m},{n}):{pattern}"
            od = orient_pretzel(pretzel_diagram(l, m, n), pattern)
            lhs = assemble(l, m, n, pattern).euler_characteristic()
            rhs = kauffman_jones(od, max_crossings=cap).unnormalized
            ok = lhs == rhs
            details = (
                lhs.text() if ok else f"euler {lhs.text()} vs jones {rhs.text()}"
            )
            records.append(_record(name, "euler", ok, details))
    return records


def _suite_delta_support(total_max: int, cap: int) -> list[dict]:
    del cap
    records = []
    for l, m, n in _instances(total_max):
        for pattern in admissible_patterns(l, m, n):
            name = f"P(-{l},{m},{n}):{pattern}"
            dmax = grading_shifts(l, m, n, pattern).delta_max
            support = assemble(l, m, n, pattern).delta_support()
            ok = bool(support) and max(support) == dmax and all(
                d in (dmax, dmax - 2, dmax - 4) for d in support
            )
            records.append(
                _record(
                    name,
                    "delta-support",
                    ok,
                    f"delta support {support}, top {dmax}",
                )
            )
    return records


def _suite_decomposition(total_max: int, cap: int) -> list[dict]:
    del cap
    records = []
    for l, m, n in _instances(total_max):
        for pattern in admissible_patterns(l, m, n):
            name = f"P(-{l},{m},{n}):{pattern}"
            v = assemble(l, m, n, pattern)
            dmax = grading_shifts(l, m, n, pattern).delta_max
            try:
                lower, upper = split_L_U(v, dmax)
                dl = decompose(lower)
                du = decompose(upper)
            except PretzelKhError as exc:
                records.append(
                    _record(
                        name,
                        "decomposition",
                        False,
                        f"{type(exc).__name__}: {exc}",
                    )
                )
                continue
            ok = dl.space() == lower and du.space() == upper
            details = "round-trip ok"
            if ok and m != l and not upper.is_zero() and not lower.is_zero():
                gap = min(t for (t, _) in upper.support()) - max(
                    t for (t, _) in lower.support()
                )
                want = 1 if l % 2 else -1
                if gap != want:
                    ok = False
                    details = f"t-gap {gap}, expected {want}"
                else:
                    details = f"round-trip ok, t-gap {gap}"
            elif not ok:
                details = "rebuild differs from split"
            records.append(_record(name, "decomposition", ok, details))
    return records


def _suite_linking(total_max: int, cap: int) -> list[dict]:
    del cap
    records = []
    for l, m, n in _instances(total_max):
        for pattern in admissible_patterns(l, m, n):
            name = f"P(-{l},{m},{n}):{pattern}"
            od = orient_pretzel(pretzel_diagram(l, m, n), pattern)
            want = expected_exceptional_t(od)
            got = exceptional_t(l, m, n, pattern)
            ok = tuple(sorted(got)) == want
            records.append(
                _record(
                    name,
                    "linking",
                    ok,
                    f"pair locations {got}, linking predicts {want}",
                )
            )
    return records


def _skein_plan(l: int, m: int, n: int, pattern: str) -> tuple[int, int, int] | None:
    """Crossing band, expected sign, expected shift for one surgery step.

    Returns (band, sign, epsilon) for this family's standard top crossing —
    the rightmost strand when m is pinned to l (or one above an even l), the
    middle strand otherwise — or None for families whose recursion enters at
    a different corner.
    """
    if m == l:
        if n < 1:
            return None
        if l % 2:
            return (2, -1, -1)
        return (2, 1, l + n - 1)
    if l % 2 == 0:
        if m == l + 1:
            return (2, 1, l + n - 1)
        return None
    if pattern == "LL":
        return (1, -1, n - l - 1)
    if pattern == "LR" and m > l + 1:
        return (1, 1, m - n - 1)
    if pattern == "RR":
        return (1, -1, l - n - 1)
    return None


def _suite_skein(total_max: int, cap: int) -> list[dict]:
    records = []
    kh: Callable[[OrientedDiagram], BigradedSpace] = lambda od: homology(
        od, max_crossings=cap
    )
    for l, m, n in _instances(total_max):
        for pattern in admissible_patterns(l, m, n):
            plan = _skein_plan(l, m, n, pattern)
            if plan is None:
                continue
            band, want_sign, want_eps = plan
            name = f"P(-{l},{m},{n}):{pattern}"
            pd = pretzel_diagram(l, m, n)
            od = orient_pretzel(pd, pattern)
            crossing = pd.band_crossings[band][0]
            triple = skein_triple(od, crossing, kh)
            if triple.epsilon != want_eps:
                for cand in all_orientations(triple.unoriented_resolution.diagram):
                    probe = skein_triple(od, crossing, kh, orient_u=cand)
                    if probe.epsilon == want_eps:
                        triple = probe
                        break
            witness = cancellation_witness(triple.v, triple.w, triple.x)
            ok = (
                triple.sign == want_sign
                and triple.epsilon == want_eps
                and witness is not None
            )
            details = (
                f"sign {triple.sign}, shift {triple.epsilon}, "
                + (
                    f"{witness.total} cancellations"
                    if witness is not None
                    else "no cancellation count fits"
                )
            )
            records.append(_record(name, "skein", ok, details))
    return records


def _suite_jones_closed_form(total_max: int, cap: int) -> list[dict]:
    records = []
    for l in range(2, total_max + 1):
        od = orient_torus2(l)
        got = kauffman_jones(od, max_crossings=cap).normalized
        want = torus2_jones(l)
        records.append(
            _record(
                f"T({l},2)",
                "jones-closed-form",
                got == want,
                want.text() if got == want else f"{got.text()} vs {want.text()}",
            )
        )
    for l in range(2, total_max // 2 + 1):
        pattern = "LR" if l % 2 else "RL"
        od = orient_pretzel(pretzel_diagram(l, l, 0), pattern)
        got = kauffman_jones(od, max_crossings=cap).unnormalized
        want = pretzel_ll0_jones(l, pattern)
        records.append(
            _record(
                f"P(-{l},{l},0):{pattern}",
                "jones-closed-form",
                got == want,
                want.text() if got == want else f"{got.text()} vs {want.text()}",
            )
        )
    return records


def _suite_mirror(total_max: int, cap: int) -> list[dict]:
    records = []
    for l, m, n in _instances(total_max):
        pattern = default_pattern(l, m, n)
        name = f"P(-{l},{m},{n}):{pattern}"
        od = orient_pretzel(pretzel_diagram(l, m, n), pattern)
        straight = homology(od, max_crossings=cap)
        flipped = homology(mirror_oriented(od), max_crossings=cap).mirror()
        ok = straight == flipped
        details = "mirror symmetric" if ok else _diff_summary(straight, flipped)
        records.append(_record(name, "mirror", ok, details))
    return records


_SUITE_RUNNERS = {
    "formula-vs-oracle": _suite_formula_vs_oracle,
    "euler": _suite_euler,
    "delta-support": _suite_delta_support,
    "decomposition": _suite_decomposition,
    "linking": _suite_linking,
    "skein": _suite_skein,
    "jones-closed-form": _suite_jones_closed_form,
    "mirror": _suite_mirror,
}


def _worker_count() -> int:
    raw = os.environ.get("PRETZEL_KH_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _run_verify(suites: Iterable[str], total_max: int, cap: int) -> tuple[int, str]:
    names = list(suites)
    workers = _worker_count()
    if workers > 1 and len(names) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(
                pool.map(
                    lambda s: _SUITE_RUNNERS[s](total_max, cap), names
                )
            )
    else:
        chunks = [_SUITE_RUNNERS[s](total_max, cap) for s in names]
    records = [r for chunk in chunks for r in chunk]
    records.sort(key=lambda r: (r["check"], r["spec"]))
    lines = [json.dumps(r) for r in records]
    code = 0 if all(r["pass"] for r in records) else 1
    return code, "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# argument plumbing


def _build_parser() -> _Parser:
    parser = _Parser(prog="pretzelkh", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_format(p):
        p.add_argument(
            "--format",
            choices=("poincare", "json", "grid"),
            default="poincare",
        )

    def add_lmn(p):
        p.add_argument("-l", type=int, required=True)
        p.add_argument("-m", type=int, required=True)
        p.add_argument("-n", type=int, required=True)
        p.add_argument("--orient", choices=("RR", "RL", "LR", "LL"))

    p_formula = sub.add_parser("formula", help="closed-form homology")
    add_lmn(p_formula)
    add_format(p_formula)

    p_oracle = sub.add_parser("oracle", help="cube-of-resolutions homology")
    src = p_oracle.add_mutually_exclusive_group(required=True)
    src.add_argument("--pretzel", metavar="L,M,N")
    src.add_argument("--pd", metavar="FILE")
    p_oracle.add_argument("--orient", choices=("RR", "RL", "LR", "LL"))
    p_oracle.add_argument("--max-crossings", type=int, default=18)
    add_format(p_oracle)

    p_jones = sub.add_parser("jones", help="unnormalized Jones polynomial")
    src = p_jones.add_mutually_exclusive_group(required=True)
    src.add_argument("--pretzel", metavar="L,M,N")
    src.add_argument("--pd", metavar="FILE")
    p_jones.add_argument("--orient", choices=("RR", "RL", "LR", "LL"))
    p_jones.add_argument("--max-crossings", type=int, default=18)

    p_compare = sub.add_parser("compare", help="formula vs oracle")
    p_compare.add_argument("--pretzel", metavar="L,M,N", required=True)
    p_compare.add_argument("--orient", choices=("RR", "RL", "LR", "LL"))
    p_compare.add_argument("--max-crossings", type=int, default=18)

    p_verify = sub.add_parser("verify", help="run a check suite")
    p_verify.add_argument("--suite", choices=SUITES + ("all",), required=True)
    p_verify.add_argument("--max", type=int, default=10)
    p_verify.add_argument("--max-crossings", type=int, default=18)

    p_grid = sub.add_parser("grid", help="render the t/q grid")
    src = p_grid.add_mutually_exclusive_group(required=True)
    src.add_argument("--pretzel", metavar="L,M,N")
    src.add_argument("--pd", metavar="FILE")
    p_grid.add_argument("--orient", choices=("RR", "RL", "LR", "LL"))
    p_grid.add_argument("--max-crossings", type=int, default=18)

    return parser


def run(argv: list[str]) -> tuple[int, str]:
    """Execute one command line; give back (exit code, output text)."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)

        if args.verb == "formula":
            v = _formula_space(args.l, args.m, args.n, args.orient)
            return 0, _format_space(v, args.format)

        if args.verb == "oracle":
            od = _oracle_input(args)
            v = homology(od, max_crossings=args.max_crossings)
            return 0, _format_space(v, args.format)

        if args.verb == "jones":
            if args.pretzel is not None:
                l, m, n = _parse_pretzel(args.pretzel)
                if m == l and n == 0 and l >= 2:
                    pattern = args.orient or ("LR" if l % 2 else "RL")
                    return 0, pretzel_ll0_jones(l, pattern).text() + "\n"
                od = _oriented_pretzel(l, m, n, args.orient)
            else:
                od = _load_diagram(args.pd)
            poly = kauffman_jones(od, max_crossings=args.max_crossings)
            return 0, poly.unnormalized.text() + "\n"

        if args.verb == "compare":
            l, m, n = _parse_pretzel(args.pretzel)
            left = _formula_space(l, m, n, args.orient)
            od = _oriented_pretzel(l, m, n, args.orient)
            right = homology(od, max_crossings=args.max_crossings)
            if left == right:
                return 0, f"equal: {left.total_dim} generators\n"
            return 1, _diff_summary(left, right) + "\n"

        if args.verb == "verify":
            names = SUITES if args.suite == "all" else (args.suite,)
            return _run_verify(names, args.max, args.max_crossings)

        if args.verb == "grid":
            if args.pretzel is not None:
                l, m, n = _parse_pretzel(args.pretzel)
                if 2 <= l <= m <= n:
                    return 0, render_grid(assemble(l, m, n, args.orient))
                od = _oriented_pretzel(l, m, n, args.orient)
            else:
                od = _load_diagram(args.pd)
            return 0, render_grid(
                homology(od, max_crossings=args.max_crossings)
            )

        raise _UsageError(f"unknown verb {args.verb!r}")
    except _UsageError as exc:
        return 2, str(exc) + "\n"
    except (PretzelKhError, ValueError) as exc:
        return 2, f"error: {exc}\n"


def main() -> None:
    import sys

    code, text = run(sys.argv[1:])
    if text:
        stream = sys.stdout if code == 0 else sys.stderr
        stream.write(text)
    raise SystemExit(code)


if __name__ == "__main__":
    main()
