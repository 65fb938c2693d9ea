"""Shift-invariant S-boxes induced from Boolean functions: lifting classification,
cryptographic metrics and exhaustive counting."""
from .anf import format_anf, parse_anf
from .boolfun import BooleanFunction
from .classifier import (classify, decide_almost_lifting, decide_proper_lifting, ell_exact,
                         is_apn_lifting, is_virtual_lifting, lifting_n_set)
from .enumeration import (SearchSpec, count_almost_lifting_classes, count_s_k, enumerate_rows,
                          permutive_class_count, s_k_lower_bound)
from .errors import CapError, InputError, ParseError, UnboundedError
from .induced import induce_cyclic, metrics_report, preimage_distribution

__version__ = "0.1.0"
