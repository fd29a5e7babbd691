"""Exact computations with the non-Lie p-filiform Leibniz algebras mu1, mu2, mu3."""

from .algebra import Algebra, CharSeq, char_seq_at, leibniz_violations, series
from .automorphism import AutParams, build_aut, check_automorphism, is_automorphism
from .catalog import FamilySpec, build, make_spec
from .linalg import Matrix
from .localaut import (certify_point, certify_probes, example_phi, in_pattern,
                       localaut_pattern, witness_local_not_global)

__version__ = "0.1.0"

__all__ = ["Algebra", "CharSeq", "char_seq_at", "leibniz_violations", "series", "AutParams",
           "build_aut", "check_automorphism", "is_automorphism", "FamilySpec", "build",
           "make_spec", "Matrix", "certify_point", "certify_probes", "example_phi",
           "in_pattern", "localaut_pattern", "witness_local_not_global"]
