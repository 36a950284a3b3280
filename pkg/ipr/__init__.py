"""
IPR matrix lab

Exact rational matrices, structural class detection with certificates,
matrix constructors, and desk-scale verification of image partition
regularity by exhaustive coloring search.
"""

from .matrixcore import (DimensionError, FinMatrix, InfMatrixSpec, Rational, SparseRow,
                         SupportBoundError, corner, mat_apply, materialize, row_profile)
from .classes import (FirstEntriesCert, PivotCert, SegmentationCert, TriCert, classify,
                      detect_segmentation, finite_support_condition, is_first_entries,
                      is_isolated_pivot, is_restricted_triangular, verify_certificate)
from .coloring import BudgetExceededError, Coloring, enumerate_colorings, mono_check
from .search import (SearchBounds, Verdict, VerdictKind, Witness, find_witness, recheck,
                     verify_at_scale)
from .constructors import (InsertionPlan, block_diag, combine_diag, compress_profile, fs,
                           insertion, scale_row_augment, schur, uniform_witness, vdw)
from .jsets import JsetQuery, jset_find
from .families import load_family
from .data_manager import DataManager, MalformedInputError

__all__ = [
    'DimensionError', 'FinMatrix', 'InfMatrixSpec', 'Rational', 'SparseRow',
    'SupportBoundError', 'corner', 'mat_apply', 'materialize', 'row_profile',
    'FirstEntriesCert', 'PivotCert', 'SegmentationCert', 'TriCert', 'classify',
    'detect_segmentation', 'finite_support_condition', 'is_first_entries',
    'is_isolated_pivot', 'is_restricted_triangular', 'verify_certificate',
    'BudgetExceededError', 'Coloring', 'enumerate_colorings', 'mono_check',
    'SearchBounds', 'Verdict', 'VerdictKind', 'Witness', 'find_witness', 'recheck',
    'verify_at_scale',
    'InsertionPlan', 'block_diag', 'combine_diag', 'compress_profile', 'fs',
    'insertion', 'scale_row_augment', 'schur', 'uniform_witness', 'vdw',
    'JsetQuery', 'jset_find', 'load_family', 'DataManager', 'MalformedInputError',
]
