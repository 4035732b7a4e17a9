"""Finite-field enumeration oracle."""

from .field import FqConfig, field_for, field_from_size
from .kernel import COMPILED
from .oracle import (OracleCapError, SubspaceRep, count_flags, count_stratum,
                     enum_subspaces, stratum_counts, verify_identity)

__all__ = ["COMPILED", "FqConfig", "OracleCapError", "SubspaceRep", "count_flags",
           "count_stratum", "enum_subspaces", "field_for", "field_from_size",
           "stratum_counts", "verify_identity"]
