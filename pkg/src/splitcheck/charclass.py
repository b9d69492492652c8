"""Characteristic classes of realified sums of complex line bundles.

A sum of m complex line bundles over a presented ring is described by the m
first Chern classes, each a degree-2 integral class.  The realification has

    p1 = sum of c1(L_i)^2        (degree 4)
    e  = product of the c1(L_i)  (degree 2m)

and the complex total Chern class is the product of (1 + c1(L_i)).  Targets
carry the tangent-bundle values these must match; Euler matching is up to
sign when the orientation is not pinned.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ring import (
    GradedClass,
    RingPresentation,
    normal_form,
    ring_add,
    ring_mul,
    ring_sub,
)


class RankError(ValueError):
    """Line-bundle count is incompatible with the requested real rank."""


@dataclass(frozen=True)
class LineBundleSum:
    ring: RingPresentation
    first_chern_classes: tuple[GradedClass, ...]

    def __post_init__(self) -> None:
        if not self.first_chern_classes:
            raise ValueError("a line bundle sum needs at least one summand")
        for i, c in enumerate(self.first_chern_classes):
            if not c.is_zero() and c.homogeneous_degree() != 2:
                raise ValueError(f"c1 #{i} is not homogeneous of degree 2")
            if not c.is_integral():
                raise ValueError(f"c1 #{i} has non-integer coefficients")

    @property
    def m(self) -> int:
        return len(self.first_chern_classes)


@dataclass(frozen=True)
class TargetClasses:
    """Tangent-bundle values a candidate splitting must reproduce.

    euler_sign_flexible records that the Euler class is only known up to
    orientation.  chern_target, when present, is an inhomogeneous total
    Chern class that must match componentwise (used for complex tangent
    bundles; sign-rigid by nature).
    """

    p1_target: GradedClass
    euler_target: GradedClass
    euler_sign_flexible: bool
    real_rank: int
    chern_target: GradedClass | None = None


def first_pontryagin(lbsum: LineBundleSum) -> GradedClass:
    out = GradedClass.zero()
    for c in lbsum.first_chern_classes:
        out = ring_add(out, ring_mul(lbsum.ring, c, c))
    return out


def euler_class(lbsum: LineBundleSum) -> GradedClass:
    out = lbsum.ring.one()
    for c in lbsum.first_chern_classes:
        out = ring_mul(lbsum.ring, out, c)
    return out


def total_chern(lbsum: LineBundleSum) -> GradedClass:
    out = lbsum.ring.one()
    for c in lbsum.first_chern_classes:
        out = ring_mul(lbsum.ring, out, ring_add(lbsum.ring.one(), c))
    return out


@dataclass
class MatchReport:
    matched: bool
    p1_ok: bool
    euler_ok: bool
    euler_sign: int | None
    chern_ok: bool | None
    residuals: dict[str, str]


def matches_targets(lbsum: LineBundleSum, targets: TargetClasses) -> MatchReport:
    """Exact comparison of computed classes against the targets.

    The sum may be shorter than the real rank (trivial summands) only when
    the Euler target vanishes; a nonzero Euler class has no trivial factors.
    """
    ring = lbsum.ring
    if 2 * lbsum.m > targets.real_rank:
        raise RankError(f"{lbsum.m} line bundles exceed real rank {targets.real_rank}")
    saturated = 2 * lbsum.m == targets.real_rank
    euler_target = normal_form(ring, targets.euler_target)
    if not saturated and not euler_target.is_zero():
        raise RankError(
            "trivial summands are only allowed when the Euler target vanishes"
        )

    residuals: dict[str, str] = {}

    p1 = first_pontryagin(lbsum)
    p1_residual = ring_sub(p1, normal_form(ring, targets.p1_target))
    p1_ok = p1_residual.is_zero()
    if not p1_ok:
        residuals["p1"] = ring.format_class(p1_residual)

    # a sum padded with trivial summands has vanishing top Chern class
    e = euler_class(lbsum) if saturated else GradedClass.zero()
    euler_sign: int | None = None
    if ring_sub(e, euler_target).is_zero():
        euler_ok = True
        euler_sign = 1
    elif targets.euler_sign_flexible and ring_add(e, euler_target).is_zero():
        euler_ok = True
        euler_sign = -1
    else:
        euler_ok = False
        residuals["euler"] = ring.format_class(ring_sub(e, euler_target))

    chern_ok: bool | None = None
    if targets.chern_target is not None:
        chern_residual = ring_sub(total_chern(lbsum), normal_form(ring, targets.chern_target))
        chern_ok = chern_residual.is_zero()
        if not chern_ok:
            residuals["chern"] = ring.format_class(chern_residual)

    matched = p1_ok and euler_ok and (chern_ok is not False)
    return MatchReport(
        matched=matched,
        p1_ok=p1_ok,
        euler_ok=euler_ok,
        euler_sign=euler_sign if euler_ok else None,
        chern_ok=chern_ok,
        residuals=residuals,
    )
