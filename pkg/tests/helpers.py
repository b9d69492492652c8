"""Shared test utilities: cached rings, seeded generators, equation oracles.

The oracle predicates hand-expand the p1/euler matching conditions for each
built-in geometry directly from the presentation relations, independently of
the characteristic-class module, so the search and the matcher can be checked
against them term by term.

Coordinate convention used throughout: a degree-2 vector lists coefficients
in the ascending basis order of the ring, which for generators written in
document order [g1, ..., gk] means the *last* generator comes first.  So for
[u, v] the vector (x0, x1) is the class x0*v + x1*u, and for [v1, v2, v3] the
vector (x0, x1, x2) is x0*v3 + x1*v2 + x2*v1.
"""

from __future__ import annotations

import random
from itertools import combinations

from splitcheck.cases import builtin_case
from splitcheck.charclass import LineBundleSum, TargetClasses, matches_targets
from splitcheck.cli import _load_search_spec, _load_targets
from splitcheck.ring import (
    GradedClass,
    RingPresentation,
    basis,
    monomials_of_degree,
    parse_presentation,
)

_RINGS: dict = {}

RING_REFS = [
    ("cp2-connect-sum", None),
    ("su3-t2", None),
    ("r-p", 2),
    ("r-p-u-variant", 2),
    ("sp2-t2", None),
    ("cpn-split", 3),
    ("s2xs2", None),
]

RING_IDS = [name if par is None else f"{name}-{par}" for name, par in RING_REFS]


def ring_for(name: str, parameter: int | None = None) -> RingPresentation:
    key = (name, parameter)
    if key not in _RINGS:
        _RINGS[key] = parse_presentation(builtin_case(name, parameter)["ring"])
    return _RINGS[key]


def targets_for(name: str, parameter: int | None = None) -> TargetClasses:
    return _load_targets(ring_for(name, parameter), builtin_case(name, parameter)["targets"])


def search_spec_for(name: str, parameter: int | None = None, budget: int | None = None):
    doc = builtin_case(name, parameter)
    ring = ring_for(name, parameter)
    return _load_search_spec(ring, _load_targets(ring, doc["targets"]), doc["search"], budget)


def all_monomials(ring: RingPresentation) -> list:
    """Every exponent vector of even degree <= top, reducible ones included."""
    n = len(ring.generators)
    out = []
    for half in range(ring.top_degree // 2 + 1):
        out.extend(monomials_of_degree(n, half))
    return out


def random_class(rng: random.Random, ring: RingPresentation, span: int = 9) -> GradedClass:
    monos = all_monomials(ring)
    terms = []
    for _ in range(rng.randint(0, 4)):
        terms.append((rng.choice(monos), rng.randint(-span, span)))
    return GradedClass.from_terms(terms)


def random_degree2(rng: random.Random, ring: RingPresentation, span: int = 3) -> GradedClass:
    return GradedClass.from_terms((m, rng.randint(-span, span)) for m in basis(ring, 2))


def accepts(ring: RingPresentation, targets: TargetClasses, vecs) -> bool:
    """Public-API acceptance: build the sum and match it against the targets."""
    classes = tuple(ring.class_from_coeffs(v) for v in vecs)
    return matches_targets(LineBundleSum(ring, classes), targets).matched


# -- hand-expanded matching systems, one per geometry -------------------------


def cp2_oracle(vecs) -> bool:
    # coords [v, u]: (b, a) is a*u + b*v
    (b1, a1), (b2, a2) = vecs
    if a1 * a1 + b1 * b1 + a2 * a2 + b2 * b2 != 6:
        return False
    return abs(a1 * a2 + b1 * b2) == 4


def su3_oracle(vecs) -> bool:
    # coords [y, x]: (b, a) is a*x + b*y
    (b1, a1), (b2, a2), (b3, a3) = vecs
    if a1 * a1 + b1 * b1 + a2 * a2 + b2 * b2 + a3 * a3 + b3 * b3 != 8:
        return False
    if 2 * (a1 * b1 + a2 * b2 + a3 * b3) - (b1 * b1 + b2 * b2 + b3 * b3) != 0:
        return False
    mixed = (
        a1 * a2 * b3 + a1 * b2 * a3 + b1 * a2 * a3
        - a1 * b2 * b3 - b1 * a2 * b3 - b1 * b2 * a3
        + 2 * b1 * b2 * b3
    )
    return abs(mixed) == 6


def rp_oracle(q: int, vecs) -> bool:
    # coords [v3, v2, v1]: (c, b, a) is a*v1 + b*v2 + c*v3
    (c1, b1, a1), (c2, b2, a2), (c3, b3, a3) = vecs
    s = 2 * q * q
    total = (
        a1 * a1 + b1 * b1 + s * c1 * c1
        + a2 * a2 + b2 * b2 + s * c2 * c2
        + a3 * a3 + b3 * b3 + s * c3 * c3
    )
    if total != 6 + 8 * q * q:
        return False
    if a1 * c1 + a2 * c2 + a3 * c3 != 0:
        return False
    if b1 * c1 + b2 * c2 + b3 * c3 != 0:
        return False
    mixed = (
        a1 * a2 * c3 + a1 * c2 * a3 + c1 * a2 * a3
        + b1 * b2 * c3 + b1 * c2 * b3 + c1 * b2 * b3
        + s * c1 * c2 * c3
    )
    return abs(mixed) == 8


def sp2_oracle(vecs) -> bool:
    # coords [z, u]: (b, a) is a*u + b*z; u^2 = 2z^2 and z^4 = 0 kill every
    # euler term except u^3*z = 2*u*z^3 and u*z^3 itself
    a = [v[1] for v in vecs]
    b = [v[0] for v in vecs]
    if sum(2 * x * x for x in a) + sum(x * x for x in b) != 12:
        return False
    if sum(x * y for x, y in zip(a, b)) != 0:
        return False

    def mixed_sum(k: int) -> int:
        tot = 0
        for chosen in combinations(range(4), k):
            term = 1
            for i in range(4):
                term *= a[i] if i in chosen else b[i]
            tot += term
        return tot

    return abs(2 * mixed_sum(3) + mixed_sum(1)) == 8
