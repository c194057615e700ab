"""Shannon/Pielou index math over categorical distributions and the
role-averaged conference diversity indicators built on top of it.

Everything here is pure: no I/O, no shared state, deterministic for
identical inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence


class IndexError_(Exception):
    """Base class for index computation failures."""


class EmptyDistribution(IndexError_):
    pass


class CategorySpaceTooSmall(IndexError_):
    pass


class NoDataForFacet(IndexError_):
    pass


class NoData(IndexError_):
    pass


class UnsortedInput(IndexError_):
    pass


class EmptyInput(IndexError_):
    pass


class Role(str, Enum):
    KEYNOTE = "keynote"
    ORGANIZER = "organizer"
    AUTHOR = "author"


class Facet(str, Enum):
    GENDER = "gender"
    BUSINESS = "business"
    GEOGRAPHY = "geography"


# Fixed category spaces; geography is open-ended.
GENDER_CATEGORIES = frozenset({"woman", "man"})
BUSINESS_CATEGORIES = frozenset({"academia", "industry", "research_centre"})

DEFAULT_GEO_REFERENCE_RICHNESS = 193  # UN member states


@dataclass(frozen=True)
class FacetDistribution:
    """Counts per category within one facet.

    ``category_space`` is the set of admissible categories; for gender and
    business it is fixed, for geography it is the observed country set.
    """

    counts: Mapping[str, int]
    category_space: frozenset[str]

    def __post_init__(self) -> None:
        for category, count in self.counts.items():
            if category not in self.category_space:
                raise ValueError(f"category {category!r} outside category space")
            if count < 0:
                raise ValueError(f"negative count for {category!r}")

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def nonzero_categories(self) -> int:
        return sum(1 for c in self.counts.values() if c > 0)

    @staticmethod
    def gender(counts: Mapping[str, int]) -> "FacetDistribution":
        return FacetDistribution(dict(counts), GENDER_CATEGORIES)

    @staticmethod
    def business(counts: Mapping[str, int]) -> "FacetDistribution":
        return FacetDistribution(dict(counts), BUSINESS_CATEGORIES)

    @staticmethod
    def geography(counts: Mapping[str, int]) -> "FacetDistribution":
        return FacetDistribution(dict(counts), frozenset(counts))


@dataclass(frozen=True)
class DiversityValue:
    value: float
    kind: str  # shannon | pielou | normalized-shannon
    sample_size: int

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ValueError("diversity value must be nonnegative")
        if self.kind in ("pielou", "normalized-shannon") and self.value > 1 + 1e-12:
            raise ValueError(f"{self.kind} value {self.value} exceeds 1")


@dataclass(frozen=True)
class IndexConfig:
    geo_reference_richness: int = DEFAULT_GEO_REFERENCE_RICHNESS


@dataclass
class RoleFacetMatrix:
    """Per-(role, facet) known-label distributions for one edition.

    ``role_totals`` carries the number of participations per role so
    coverage (known / total) can be reported alongside the indices; it may
    be empty when only the indices are needed.
    """

    entries: dict[tuple[Role, Facet], FacetDistribution] = field(default_factory=dict)
    role_totals: dict[Role, int] = field(default_factory=dict)

    def get(self, role: Role, facet: Facet) -> FacetDistribution | None:
        return self.entries.get((role, facet))


@dataclass
class DiversityReport:
    gdi: DiversityValue | None
    bdi: DiversityValue | None
    geodi: DiversityValue | None
    cdi: float | None
    per_role: dict[tuple[Role, Facet], DiversityValue]
    coverage: dict[tuple[Role, Facet], float]
    missing_roles: dict[Facet, set[Role]]


def shannon(dist: FacetDistribution) -> DiversityValue:
    """Shannon index H' = -sum(p_i ln p_i), natural log, 0*ln(0) = 0."""
    total = dist.total
    if total == 0:
        raise EmptyDistribution("cannot compute an index over an empty distribution")
    h = 0.0
    # sorted for run-to-run float reproducibility regardless of dict order
    for _category, count in sorted(dist.counts.items()):
        if count > 0:
            p = count / total
            h -= p * math.log(p)
    # h can be -0.0 for a single-category distribution; normalize to +0.0
    return DiversityValue(value=h if h > 0.0 else 0.0, kind="shannon", sample_size=total)


def pielou(dist: FacetDistribution, s: int) -> DiversityValue:
    """Pielou evenness J' = H' / ln(s) over a fixed category space of size s.

    s = 1 is degenerate (ln 1 = 0); a one-category space is trivially even,
    so J' = 1 there.
    """
    if s < 1:
        raise CategorySpaceTooSmall("category space size must be >= 1")
    if s < dist.nonzero_categories:
        raise CategorySpaceTooSmall(
            f"category space {s} smaller than {dist.nonzero_categories} observed categories"
        )
    h = shannon(dist)
    if s == 1:
        return DiversityValue(value=1.0, kind="pielou", sample_size=h.sample_size)
    value = min(h.value / math.log(s), 1.0)
    return DiversityValue(value=value, kind="pielou", sample_size=h.sample_size)


def normalized_shannon(dist: FacetDistribution, s_ref: int) -> DiversityValue:
    """H' normalized by ln(s_ref) and clamped to 1.

    Unlike Pielou over the observed categories, this stays sensitive to
    richness: an extra evenly-represented country raises the value.
    """
    if s_ref < 2:
        raise CategorySpaceTooSmall("reference richness must be >= 2")
    h = shannon(dist)
    value = min(h.value / math.log(s_ref), 1.0)
    return DiversityValue(value=value, kind="normalized-shannon", sample_size=h.sample_size)


def _facet_value(dist: FacetDistribution, facet: Facet, config: IndexConfig) -> DiversityValue:
    if facet is Facet.GENDER:
        return pielou(dist, 2)
    if facet is Facet.BUSINESS:
        return pielou(dist, 3)
    return normalized_shannon(dist, config.geo_reference_richness)


def facet_index(
    matrix: RoleFacetMatrix,
    facet: Facet,
    config: IndexConfig | None = None,
) -> tuple[DiversityValue, set[Role]]:
    """Unweighted mean of the per-role facet values over roles with data.

    Roles without a distribution are excluded from the mean and returned as
    the missing set, never imputed as zero.
    """
    config = config or IndexConfig()
    values: list[DiversityValue] = []
    missing: set[Role] = set()
    for role in Role:
        dist = matrix.get(role, facet)
        if dist is None or dist.total == 0:
            missing.add(role)
        else:
            values.append(_facet_value(dist, facet, config))
    if not values:
        raise NoDataForFacet(f"no role has data for facet {facet.value}")
    mean = sum(v.value for v in values) / len(values)
    kind = values[0].kind
    sample = sum(v.sample_size for v in values)
    return DiversityValue(value=mean, kind=kind, sample_size=sample), missing


def diversity_report(
    matrix: RoleFacetMatrix,
    config: IndexConfig | None = None,
) -> DiversityReport:
    """Compute the three facet indices and their mean for one edition."""
    config = config or IndexConfig()
    if not any(d.total > 0 for d in matrix.entries.values()):
        raise NoData("matrix has no populated entries")

    per_role: dict[tuple[Role, Facet], DiversityValue] = {}
    for (role, facet), dist in matrix.entries.items():
        if dist.total > 0:
            per_role[(role, facet)] = _facet_value(dist, facet, config)

    headline: dict[Facet, DiversityValue | None] = {}
    missing_roles: dict[Facet, set[Role]] = {}
    for facet in Facet:
        try:
            value, missing = facet_index(matrix, facet, config)
        except NoDataForFacet:
            headline[facet] = None
            missing_roles[facet] = set(Role)
        else:
            headline[facet] = value
            missing_roles[facet] = missing

    defined = [v.value for v in headline.values() if v is not None]
    cdi = sum(defined) / len(defined) if defined else None

    coverage: dict[tuple[Role, Facet], float] = {}
    for (role, facet), dist in matrix.entries.items():
        total = matrix.role_totals.get(role)
        if total:
            coverage[(role, facet)] = dist.total / total

    return DiversityReport(
        gdi=headline[Facet.GENDER],
        bdi=headline[Facet.BUSINESS],
        geodi=headline[Facet.GEOGRAPHY],
        cdi=cdi,
        per_role=per_role,
        coverage=coverage,
        missing_roles=missing_roles,
    )


def timeline(
    reports: Sequence[tuple[int, DiversityReport]],
) -> list[tuple[int, float | None]]:
    """Project (year, report) pairs onto (year, cdi) points.

    Undefined CDIs stay as None gaps rather than collapsing to zero.
    """
    years = [year for year, _ in reports]
    if any(b <= a for a, b in zip(years, years[1:])):
        raise UnsortedInput("years must be strictly increasing")
    return [(year, report.cdi) for year, report in reports]


def boxplot_stats(values: Iterable[float]) -> dict[str, float]:
    """Five-number summary with linear interpolation between closest ranks."""
    data = sorted(values)
    if not data:
        raise EmptyInput("boxplot needs at least one value")

    def quantile(q: float) -> float:
        pos = q * (len(data) - 1)
        lo = math.floor(pos)
        hi = math.ceil(pos)
        if lo == hi:
            return data[lo]
        return data[lo] + (pos - lo) * (data[hi] - data[lo])

    return {
        "min": data[0],
        "q1": quantile(0.25),
        "median": quantile(0.5),
        "q3": quantile(0.75),
        "max": data[-1],
    }
