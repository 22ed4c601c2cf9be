"""Self-dual normal bases of finite field extensions: construction and minimum-complexity search."""

from .construct import (
    SdnbCertificate,
    base_extension,
    compose_coprime,
    construct,
    existence_check,
    verify_sdnb,
)
from .errors import DomainError, InternalError, NoSdnbError, UnsupportedCaseError
from .orthogonal import GroupSpec, group_spec, predicted_cardinality
from .search import SearchReport, complexity, merge_reports, optimality_precheck, search_min

__all__ = [
    "SdnbCertificate",
    "base_extension",
    "compose_coprime",
    "construct",
    "existence_check",
    "verify_sdnb",
    "DomainError",
    "InternalError",
    "NoSdnbError",
    "UnsupportedCaseError",
    "GroupSpec",
    "group_spec",
    "predicted_cardinality",
    "SearchReport",
    "complexity",
    "merge_reports",
    "optimality_precheck",
    "search_min",
]
