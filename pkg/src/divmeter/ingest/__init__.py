from .annotations import AnnotationRowError, HeaderMismatch, ParticipationDraft, parse_annotations
from .dblp import AuthorRef, MalformedXml, RawPaperRecord, parse_dblp
from .gender import (
    GenderProvider,
    HttpGenderProvider,
    LexiconProvider,
    ProviderUnavailable,
    infer_gender,
)
from .pipeline import AssembleResult, ConflictingManualLabels, IngestReport, assemble_edition
from .registry import (
    InstitutionRegistryEntry,
    load_affiliation_map,
    load_registry,
    resolve_affiliation,
)

__all__ = [
    "AnnotationRowError",
    "AssembleResult",
    "AuthorRef",
    "ConflictingManualLabels",
    "GenderProvider",
    "HeaderMismatch",
    "HttpGenderProvider",
    "IngestReport",
    "InstitutionRegistryEntry",
    "LexiconProvider",
    "MalformedXml",
    "ParticipationDraft",
    "ProviderUnavailable",
    "RawPaperRecord",
    "infer_gender",
    "load_affiliation_map",
    "load_registry",
    "parse_annotations",
    "parse_dblp",
    "resolve_affiliation",
]
