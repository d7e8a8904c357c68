"""Shared fixtures: a session-wide oracle cache and the acceptance summary.

The cube-of-resolutions oracle is the expensive half of the suite, and
several test modules want homology of the same diagrams, so results are
memoized for the whole session — keyed both by pretzel parameters and by
the underlying oriented diagram, which lets skein triples reuse spaces
computed for the direct formula-vs-oracle sweeps.  Acceptance tests record
verdict lines per criterion; the lines are printed in a terminal section
at the end of the run so they are visible even when every test passes.
"""

from __future__ import annotations

import pytest

from pretzelkh.diagram import orient_pretzel, pretzel_diagram
from pretzelkh.khcube import homology

_ORACLE_CACHE: dict = {}
_DIAGRAM_CACHE: dict = {}
_ACCEPTANCE: list[tuple[str, bool, str]] = []


def _diagram_key(od):
    return (od.diagram.to_json(), od.signs, od.directions)


def cached_homology(od, **kw):
    """Homology of an oriented diagram, memoized for the session."""
    key = (_diagram_key(od), tuple(sorted(kw.items())))
    if key not in _DIAGRAM_CACHE:
        _DIAGRAM_CACHE[key] = homology(od, max_crossings=20, **kw)
    return _DIAGRAM_CACHE[key]


def oracle(l: int, m: int, n: int, pattern: str, **kw):
    """Cached homology of the standard diagram of P(-l,m,n), oriented."""
    key = (l, m, n, pattern, tuple(sorted(kw.items())))
    if key not in _ORACLE_CACHE:
        od = orient_pretzel(pretzel_diagram(l, m, n), pattern)
        _ORACLE_CACHE[key] = cached_homology(od, **kw)
    return _ORACLE_CACHE[key]


def pretzel_instances(total_max: int, lo: int = 2):
    """All (l,m,n) with lo <= l <= m <= n and l+m+n <= total_max."""
    for l in range(lo, total_max // 3 + 1):
        for m in range(l, (total_max - l) // 2 + 1):
            for n in range(m, total_max - l - m + 1):
                yield (l, m, n)


@pytest.fixture
def criterion():
    def record(num: str, ok: bool, detail: str):
        _ACCEPTANCE.append((num, ok, detail))

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    del exitstatus, config
    if not _ACCEPTANCE:
        return
    merged: dict[str, tuple[bool, list[str]]] = {}
    for num, ok, detail in _ACCEPTANCE:
        prev_ok, details = merged.setdefault(num, (True, []))
        merged[num] = (prev_ok and ok, details)
        details.append(detail)
    terminalreporter.section("acceptance criteria")
    for num in sorted(merged):
        ok, details = merged[num]
        verdict = "PASS" if ok else "FAIL"
        text = "; ".join(details)
        terminalreporter.write_line(f"CRITERION {num}: {verdict} - {text}")
