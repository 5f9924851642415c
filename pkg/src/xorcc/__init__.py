"""Partial XOR functions: parity decision trees, one-way communication
complexity, covering codes and the combinatorics that connects them."""

from ._errors import PreconditionError, UsageError, VerificationError
from .boolfn import MessageMap, PartialFn, make_fk
from .codes import CoveringCode
from .gf2 import BitVector, Gf2Matrix, Gf2Subspace
from .nadt import dtp_exact, nadt_complexity, synthesize_nadt, verify_nadt
from .owcc import owcc_bounds, owcc_exact, synthesize_oneway, verify_oneway
from .shifts import preserving_shifts

__version__ = "0.1.0"

__all__ = [
    "BitVector",
    "CoveringCode",
    "Gf2Matrix",
    "Gf2Subspace",
    "MessageMap",
    "PartialFn",
    "PreconditionError",
    "UsageError",
    "VerificationError",
    "dtp_exact",
    "make_fk",
    "nadt_complexity",
    "owcc_bounds",
    "owcc_exact",
    "preserving_shifts",
    "synthesize_nadt",
    "synthesize_oneway",
    "verify_nadt",
    "verify_oneway",
]
