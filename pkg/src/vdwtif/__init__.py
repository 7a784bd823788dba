"""Van der Waerden's theorem via translation-invariant filters, run on
eventually periodic subsets of N."""
from .epset import (
    EMPTY,
    NAT,
    EpSet,
    ResourceLimitError,
    complement,
    difference,
    finite,
    from_bits,
    intersect,
    interval,
    parse_ep,
    res,
    shift_left,
    union,
)
from .windowset import Progression, WindowSet, materialize
from .combinatorics import (
    NotApplicableError,
    classify,
    gap_bound,
    is_piecewise_syndetic,
    is_syndetic,
    is_thick,
    pws_witness,
    ramsey_piece,
)
from .algebra import SetAlgebra
from .filters import FipFamily, StagedFilter, build_maximal_tif, build_ultrafilter, b_sub_u_ep, fip
from .vdw import ap_k, claim_find_ap, corollary_coloring, oracle_ap_k, theorem_main, vdw_check
from .quotient import check_correspondence, pseudosum
from .dsl import parse_set

__version__ = "0.1.0"
