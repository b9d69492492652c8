"""Weyl-dimension catalogs for Spin(2m+1), SU(2) and circle factors, plus the
representation-dimension obstruction engine.

Dimensions come from the Weyl formula evaluated in exact rationals.  Field
types (real / complex / quaternionic) are computed from the Frobenius-Schur
indicator: for the self-dual B_m and A_1 irreps the indicator is
(-1)^<lambda, 2 rho-check>, which reduces to the familiar rules (exterior
powers real; half-spin real iff 2m+1 = +-1 mod 8; SU(2) irreps real iff odd
complex dimension).  Circle representations are the reconstructed catalog of
2-dimensional rotations plus the trivial representation; they carry a complex
structure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

REAL = "real"
COMPLEX = "complex"
QUATERNIONIC = "quaternionic"


class CatalogError(ValueError):
    """A catalog cannot certify completeness for the requested bound."""


@dataclass(frozen=True)
class RootSystem:
    """Type B_m (Spin(2m+1)), A_1 (SU(2)), or T (circle, reconstructed)."""

    family: str
    rank: int

    def __post_init__(self) -> None:
        if self.family not in ("A", "B", "T"):
            raise ValueError(f"unsupported family {self.family!r}")
        if self.family in ("A", "T") and self.rank != 1:
            raise ValueError(f"family {self.family} requires rank 1")
        if self.family == "B" and self.rank < 1:
            raise ValueError("B_m requires rank >= 1")

    @property
    def group_name(self) -> str:
        if self.family == "A":
            return "SU(2)"
        if self.family == "T":
            return "S^1"
        return f"Spin({2 * self.rank + 1})"


def _b_weight_coordinates(rank: int, weight: Sequence[int]) -> list[Fraction]:
    """e-coordinates of a B_m weight given in fundamental-weight coefficients."""
    coords = []
    for i in range(rank):
        total = Fraction(weight[rank - 1], 2)
        total += sum(weight[k] for k in range(i, rank - 1))
        coords.append(total)
    return coords


def _b_positive_roots(rank: int) -> list[tuple[int, int, int]]:
    """(i, j, kind): kind 0 = e_i - e_j, 1 = e_i + e_j, 2 = e_i (j unused)."""
    roots = []
    for i in range(rank):
        for j in range(i + 1, rank):
            roots.append((i, j, 0))
            roots.append((i, j, 1))
        roots.append((i, i, 2))
    return roots


def weyl_dim(rs: RootSystem, weight: Sequence[int]) -> int:
    """Complex dimension of the irrep with the given dominant weight."""
    weight = tuple(weight)
    if any(w < 0 for w in weight):
        raise ValueError(f"weight {weight} is not dominant")
    if rs.family == "A":
        if len(weight) != 1:
            raise ValueError("A_1 weights have one coefficient")
        return weight[0] + 1
    if rs.family == "T":
        if len(weight) != 1:
            raise ValueError("circle weights have one coefficient")
        return 1
    if len(weight) != rs.rank:
        raise ValueError(f"B_{rs.rank} weights have {rs.rank} coefficients")
    lam = _b_weight_coordinates(rs.rank, weight)
    rho = [Fraction(2 * (rs.rank - i) - 1, 2) for i in range(rs.rank)]
    num = Fraction(1)
    den = Fraction(1)
    for i, j, kind in _b_positive_roots(rs.rank):
        if kind == 0:
            num *= (lam[i] + rho[i]) - (lam[j] + rho[j])
            den *= rho[i] - rho[j]
        elif kind == 1:
            num *= (lam[i] + rho[i]) + (lam[j] + rho[j])
            den *= rho[i] + rho[j]
        else:
            num *= lam[i] + rho[i]
            den *= rho[i]
    dim = num / den
    if dim.denominator != 1:
        raise ArithmeticError(f"Weyl dimension for {weight} came out non-integral: {dim}")
    return int(dim)


def field_type(rs: RootSystem, weight: Sequence[int]) -> str:
    """Frobenius-Schur type of the irrep with the given dominant weight."""
    weight = tuple(weight)
    if any(w < 0 for w in weight):
        raise ValueError(f"weight {weight} is not dominant")
    if rs.family == "T":
        return REAL if weight[0] == 0 else COMPLEX
    if rs.family == "A":
        return REAL if weight[0] % 2 == 0 else QUATERNIONIC
    # <lambda, sum of positive coroots> = sum_i (m - i + 1) * (2 lambda_i)
    lam = _b_weight_coordinates(rs.rank, weight)
    pairing = sum((rs.rank - i) * int(2 * lam[i]) for i in range(rs.rank))
    return REAL if pairing % 2 == 0 else QUATERNIONIC


def fs_indicator(ftype: str) -> int:
    return {REAL: 1, COMPLEX: 0, QUATERNIONIC: -1}[ftype]


def _real_dim(complex_dim: int, ftype: str) -> int:
    return complex_dim if ftype == REAL else 2 * complex_dim


def _b_weight_name(rank: int, weight: tuple[int, ...]) -> str | None:
    nonzero = [(i, w) for i, w in enumerate(weight) if w]
    if not nonzero:
        return "1"
    if len(nonzero) == 1:
        i, w = nonzero[0]
        if w == 1 and i < rank - 1:
            return f"L^{i + 1}"
        if i == rank - 1 and w == 1:
            return "D"
        if i == rank - 1 and w == 2:
            return f"L^{rank}"
    return None


@dataclass(frozen=True)
class Irrep:
    rs: RootSystem
    highest_weight: tuple[int, ...]
    complex_dim: int
    field_type: str
    real_dim: int
    name: str

    @staticmethod
    def build(rs: RootSystem, weight: Sequence[int]) -> "Irrep":
        weight = tuple(weight)
        cdim = weyl_dim(rs, weight)
        ftype = field_type(rs, weight)
        if rs.family == "A":
            name = f"W{cdim}"
        elif rs.family == "T":
            name = "1" if weight[0] == 0 else f"rot{weight[0]}"
        else:
            name = _b_weight_name(rs.rank, weight) or "wt" + "".join(str(w) for w in weight)
        return Irrep(
            rs=rs,
            highest_weight=weight,
            complex_dim=cdim,
            field_type=ftype,
            real_dim=_real_dim(cdim, ftype),
            name=name,
        )

    @property
    def is_trivial(self) -> bool:
        return all(w == 0 for w in self.highest_weight)


@dataclass(frozen=True)
class IrrepCatalog:
    rs: RootSystem
    dim_bound: int
    entries: tuple[Irrep, ...]

    def nontrivial(self) -> list[Irrep]:
        return [e for e in self.entries if not e.is_trivial]


def _enumerate_b_weights(rs: RootSystem, cdim_bound: int) -> Iterator[tuple[int, ...]]:
    """All dominant weights with complex dimension <= cdim_bound.

    The Weyl dimension is strictly increasing along each coordinate ray (each
    numerator factor is positive and nondecreasing, at least one strictly),
    so depth-first search with a per-coordinate cutoff is exhaustive.  The
    monotonicity is asserted along the way rather than assumed.
    """
    rank = rs.rank

    def extend(prefix: list[int], index: int) -> Iterator[tuple[int, ...]]:
        if index == rank:
            yield tuple(prefix)
            return
        value = 0
        previous = None
        while True:
            candidate = prefix + [value] + [0] * (rank - index - 1)
            dim = weyl_dim(rs, candidate)
            if previous is not None and dim < previous:
                raise AssertionError("Weyl dimension decreased along a coordinate ray")
            previous = dim
            if dim > cdim_bound:
                return
            yield from extend(prefix + [value], index + 1)
            value += 1

    yield from extend([], 0)


def catalog_irreps(rs: RootSystem, dim_bound: int, max_circle_weight: int = 1) -> IrrepCatalog:
    """Every irrep with real dimension <= dim_bound.

    Completeness: any weight not visited has complex dimension > dim_bound,
    hence real dimension > dim_bound.  Circle catalogs are infinite in
    principle (all rotation weights share real dimension 2); only weights up
    to max_circle_weight are listed and the catalog is flagged reconstructed
    by its root system family.
    """
    if dim_bound < 1:
        raise CatalogError("dim_bound must be >= 1")
    entries = []
    if rs.family == "B":
        for weight in _enumerate_b_weights(rs, dim_bound):
            irrep = Irrep.build(rs, weight)
            if irrep.real_dim <= dim_bound:
                entries.append(irrep)
    elif rs.family == "A":
        k = 1
        while True:
            irrep = Irrep.build(rs, (k - 1,))
            if irrep.complex_dim > dim_bound:
                break
            if irrep.real_dim <= dim_bound:
                entries.append(irrep)
            k += 1
    else:
        for w in range(max_circle_weight + 1):
            irrep = Irrep.build(rs, (w,))
            if irrep.real_dim <= dim_bound:
                entries.append(irrep)
    entries.sort(key=lambda e: (e.real_dim, e.highest_weight))
    return IrrepCatalog(rs=rs, dim_bound=dim_bound, entries=tuple(entries))


@dataclass(frozen=True)
class ProductIrrep:
    """External tensor product of one irrep per factor group."""

    components: tuple[Irrep, ...]
    complex_dim: int
    field_type: str
    real_dim: int

    @staticmethod
    def build(components: Sequence[Irrep]) -> "ProductIrrep":
        cdim = 1
        indicator = 1
        for c in components:
            cdim *= c.complex_dim
            indicator *= fs_indicator(c.field_type)
        ftype = {1: REAL, 0: COMPLEX, -1: QUATERNIONIC}[indicator]
        return ProductIrrep(
            components=tuple(components),
            complex_dim=cdim,
            field_type=ftype,
            real_dim=_real_dim(cdim, ftype),
        )

    @property
    def name(self) -> str:
        return "x".join(c.name for c in self.components)

    @property
    def is_trivial(self) -> bool:
        return all(c.is_trivial for c in self.components)


@dataclass
class ObstructionCase:
    factors: tuple[RootSystem, ...]
    manifold_dim: int
    euler_nonzero: bool
    almost_complex_forbidden: bool
    provenance: str = ""

    def __post_init__(self) -> None:
        if self.manifold_dim <= 0 or self.manifold_dim % 2:
            raise ValueError("manifold_dim must be even and positive")


@dataclass
class MultisetTrace:
    summands: tuple[ProductIrrep, ...]
    rejected_by: str | None  # "F1", "F2", or None when the multiset survives
    detail: str


@dataclass
class ObstructionResult:
    verdict: str  # "NO-VALID-V" or "VALID-V-EXISTS"
    traces: list[MultisetTrace]
    case: ObstructionCase
    product_entries: list[ProductIrrep]


def product_catalog(case: ObstructionCase) -> list[ProductIrrep]:
    """All external tensor products with real dimension <= manifold_dim."""
    per_factor = [catalog_irreps(rs, case.manifold_dim) for rs in case.factors]
    out = []
    for combo in itertools.product(*(c.entries for c in per_factor)):
        prod = ProductIrrep.build(combo)
        if prod.real_dim <= case.manifold_dim:
            out.append(prod)
    out.sort(key=lambda p: (p.real_dim, tuple(c.highest_weight for c in p.components)))
    return out


def _multisets_with_total(
    entries: list[ProductIrrep], total: int
) -> Iterator[tuple[ProductIrrep, ...]]:
    """Multisets (nondecreasing index sequences) with real dims summing to total."""

    def recurse(start: int, remaining: int, chosen: list[ProductIrrep]) -> Iterator[tuple[ProductIrrep, ...]]:
        if remaining == 0:
            yield tuple(chosen)
            return
        for idx in range(start, len(entries)):
            entry = entries[idx]
            if entry.real_dim > remaining:
                break  # entries are sorted by real dimension
            chosen.append(entry)
            yield from recurse(idx, remaining - entry.real_dim, chosen)
            chosen.pop()

    yield from recurse(0, total, [])


def obstruct_tangent_rep(case: ObstructionCase) -> ObstructionResult:
    """Decide whether any isotropy representation could carry the tangent bundle.

    Every multiset of product irreps with total real dimension equal to the
    manifold dimension is enumerated.  Filter F1 (a nonvanishing Euler class
    forbids odd-dimensional summands) is applied first; survivors meet filter
    F2 (a manifold with no almost complex structure cannot have a tangent
    representation all of whose summands carry complex structures).  Exactly
    one filter is cited per rejected multiset.
    """
    entries = product_catalog(case)
    traces: list[MultisetTrace] = []
    any_valid = False
    for multiset in _multisets_with_total(entries, case.manifold_dim):
        rejected_by = None
        detail = ""
        if case.euler_nonzero:
            odd = [p for p in multiset if p.real_dim % 2]
            if odd:
                rejected_by = "F1"
                detail = (
                    f"odd-dimensional summand {odd[0].name} (real dim {odd[0].real_dim}) "
                    "forces a vanishing Euler class"
                )
        if rejected_by is None and case.almost_complex_forbidden:
            if all(p.field_type in (COMPLEX, QUATERNIONIC) for p in multiset):
                rejected_by = "F2"
                detail = (
                    "every summand carries a complex structure, contradicting the "
                    "almost-complex obstruction"
                )
        if rejected_by is None:
            any_valid = True
            detail = "no filter applies"
        traces.append(MultisetTrace(summands=multiset, rejected_by=rejected_by, detail=detail))
    verdict = "VALID-V-EXISTS" if any_valid else "NO-VALID-V"
    return ObstructionResult(verdict=verdict, traces=traces, case=case, product_entries=entries)
