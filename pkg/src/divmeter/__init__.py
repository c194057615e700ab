"""Diversity indices and dashboards for AI-conference participation data."""

from .indices import (
    DiversityReport,
    DiversityValue,
    Facet,
    FacetDistribution,
    IndexConfig,
    Role,
    RoleFacetMatrix,
    boxplot_stats,
    diversity_report,
    facet_index,
    normalized_shannon,
    pielou,
    shannon,
    timeline,
)
from .model import Edition, Label, Participation, apply_self_declaration, build_matrix
from .store import Store, VaultEntry

__version__ = "0.1.0"

__all__ = [
    "DiversityReport",
    "DiversityValue",
    "Edition",
    "Facet",
    "FacetDistribution",
    "IndexConfig",
    "Label",
    "Participation",
    "Role",
    "RoleFacetMatrix",
    "Store",
    "VaultEntry",
    "apply_self_declaration",
    "boxplot_stats",
    "build_matrix",
    "diversity_report",
    "facet_index",
    "normalized_shannon",
    "pielou",
    "shannon",
    "timeline",
]
