"""Exact partition combinatorics around Glaisher's theorem for every modulus.

The central object is a bijection from partitions whose parts repeat fewer
than ``m`` times to partitions with no part divisible by ``m``, carrying the
alternating sum type of the source to the length type of the image.
"""

from .core import (
    Partition,
    PartitionError,
    NegativePart,
    NotAPartition,
    LengthMismatch,
    make_partition,
    conjugate,
    alt_sum_type,
    residue_profile,
    length_type,
    is_m_flat,
    is_m_regular,
    is_in_P,
    descents,
    scale_add,
)
from .bijection import (
    BijectionTrace,
    SigmaRecord,
    step1_extract,
    step2_extract,
    flat_to_regular,
    split_flat_core,
    regular_to_flat,
    p_to_q,
    q_to_p,
    invert_by_search,
)
from .enumeration import (
    CountTable,
    Family,
    partitions_of,
    filtered_partitions,
    count_by_type,
    product_side_coefficients,
)
from .verification import (
    VerificationReport,
    verify_main_theorem,
    verify_glaisher,
    verify_rr_companion,
    verify_ag_companion,
    verify_roundtrip,
)

__version__ = "0.1.0"
