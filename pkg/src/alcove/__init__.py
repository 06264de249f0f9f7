"""Exact Verlinde-type fusion algebras and the projective ideal of the
restricted character ring, for simply-laced root systems at odd levels."""

from .affine import DomainError, InvalidLevel, SizeBoundExceeded, enumerate_domains, validate_l
from .fusion import FusionTable, Kind, build_table, pr_basis
from .rootdata import RootDatum, UnsupportedRootSystem, build_root_datum

__all__ = [
    "DomainError",
    "FusionTable",
    "InvalidLevel",
    "Kind",
    "RootDatum",
    "SizeBoundExceeded",
    "UnsupportedRootSystem",
    "build_root_datum",
    "build_table",
    "enumerate_domains",
    "pr_basis",
    "validate_l",
]
