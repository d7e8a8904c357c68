"""Jones polynomial engines: Kauffman bracket plus torus-link closed forms.

The bracket is evaluated directly in the quantum variable: writing |v| for
the number of 1-smoothings of a resolution v and c(v) for its circle count,

    B(D) = sum over v of (-q)^|v| (q + q^-1)^c(v),

computed by the recursion B(D) = B(D_0) - q B(D_1) with memoization on a
canonical relabeling of the partially resolved diagram (twist regions
collapse to a linear number of distinct subdiagrams this way).  The
unnormalized Jones polynomial is the graded Euler characteristic of
Khovanov homology,

    unnormalized = (-1)^{n_-} q^{n_+ - 2 n_-} B(D),

and dividing by q + q^-1 normalizes the unknot to 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bigraded import LaurentPoly, laurent_from_pairs
from .diagram import Diagram, OrientedDiagram, resolve_crossing
from .errors import TooLarge

__all__ = ["JonesResult", "kauffman_jones", "torus2_jones", "pretzel_ll0_jones"]

_LOOP = LaurentPoly({1: 1, -1: 1})
_MINUS_Q = LaurentPoly({1: -1})


@dataclass(frozen=True)
class JonesResult:
    """Both normalizations of a Jones polynomial.

    ``unnormalized`` is (q + q^-1) times ``normalized``; the former equals
    the graded Euler characteristic of the Khovanov homology.
    """

    normalized: LaurentPoly
    unnormalized: LaurentPoly


def _loop_power(k: int) -> LaurentPoly:
    out = LaurentPoly.one()
    for _ in range(k):
        out = out * _LOOP
    return out


def _canonical_crossings(d: Diagram) -> tuple[tuple[int, ...], ...]:
    """Crossing tuple with edges renumbered by first appearance."""
    relabel: dict[int, int] = {}
    out = []
    for ports in d.crossings:
        out.append(tuple(relabel.setdefault(e, len(relabel)) for e in ports))
    return tuple(out)


def _bracket(d: Diagram, memo: dict) -> LaurentPoly:
    circles = _loop_power(d.free_circles)
    if not d.crossings:
        return circles
    if d.free_circles:
        d = Diagram(d.crossings)
    key = _canonical_crossings(d)
    cached = memo.get(key)
    if cached is None:
        cached = _bracket(resolve_crossing(d, 0, 0), memo) + _MINUS_Q * _bracket(
            resolve_crossing(d, 0, 1), memo
        )
        memo[key] = cached
    return circles * cached


def kauffman_jones(od: OrientedDiagram, max_crossings: int = 18) -> JonesResult:
    """Jones polynomial of an oriented diagram via the Kauffman bracket."""
    d = od.diagram
    if d.crossing_count > max_crossings:
        raise TooLarge(
            f"{d.crossing_count} crossings exceeds the bound {max_crossings}"
        )
    if not d.crossings and not d.free_circles:
        raise ValueError("the empty diagram has no Jones polynomial")
    bracket = _bracket(d, {})
    frame = LaurentPoly.monomial(
        od.n_plus - 2 * od.n_minus, -1 if od.n_minus % 2 else 1
    )
    unnormalized = frame * bracket
    return JonesResult(unnormalized.divide_exact(_LOOP), unnormalized)


def torus2_jones(l: int) -> LaurentPoly:
    """Normalized Jones polynomial of the positive (2, l) torus link:
    q^(l-1) + sum over 1 <= i <= l-1 of (-1)^(i+1) q^(l+2i+1)."""
    if l < 2:
        raise ValueError(f"need l >= 2, got {l}")
    pairs = [(l - 1, 1)]
    for i in range(1, l):
        pairs.append((l + 2 * i + 1, 1 if i % 2 else -1))
    return laurent_from_pairs(pairs)


def pretzel_ll0_jones(l: int, pattern: str = "LR") -> LaurentPoly:
    """Unnormalized Jones polynomial of P(-l, l, 0).

    The LR-oriented link is the connected sum of the (2, l) torus link and
    its mirror, so the normalized polynomial is the product of the two
    torus values; RL reverses the outer component, whose linking number
    with the rest is -l/2, shifting the whole polynomial by q^(3l).
    """
    if l < 2:
        raise ValueError(f"need l >= 2, got {l}")
    if pattern not in ("LR", "RL"):
        raise ValueError(f"pattern must be LR or RL, got {pattern!r}")
    v = torus2_jones(l)
    unnormalized = v.substitute_inverse() * v * _LOOP
    if pattern == "RL":
        unnormalized = LaurentPoly.monomial(3 * l) * unnormalized
    return unnormalized
