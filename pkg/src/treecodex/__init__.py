"""treecodex — bijective codes for labelled rooted trees.

Four codes map the ``(n+1)^(n-1)`` rooted trees on ``{0, ..., n}`` (root 0)
one-to-one onto sequences of length ``n - 1`` over ``{0, ..., n}``: Prüfer,
Blob, Happy and Dandelion.  Each of the last three is available as a fast
linear-time codec, as the literal tree surgery, and as a walk through a chain
of sign-reversing involutions on determinant expansions.
"""

from __future__ import annotations

from .blob import (
    Ascent,
    DegreeTable,
    NonAscent,
    blob_decode,
    blob_decode_surgery,
    blob_decode_weighted,
    blob_encode,
    blob_encode_surgery,
    blob_encode_weighted,
    code_stats,
    edge_stats,
    format_weighted,
    parse_weighted,
    project,
)
from .codecs import CODECS, MATRIX_CODECS, Codec, decode, encode, get_codec, warm_up
from .core import (
    Code,
    FunctionalDigraph,
    HappyFunctionalDigraph,
    RootedTree,
    brute_force_trees,
    cycles_of,
    enumerate_codes,
    enumerate_trees,
    format_code,
    format_tree,
    is_escher,
    naive_code,
    parse_code,
    parse_tree,
    path,
    random_tree,
    reverse_path,
    validate_tree,
)
from .dandelion import dandelion_decode, dandelion_decode_surgery, dandelion_encode, dandelion_encode_fast
from .engine import LabelledTree, Pipeline, mtt_involution, toggle_cycle, walk
from .errors import (
    BoundExceeded,
    CycleFound,
    InvalidForest,
    InvalidLabel,
    MalformedCode,
    MalformedToken,
    NoPathToRoot,
    NotACycle,
    NotATree,
    PreconditionViolated,
    StepBudgetExceeded,
    TreeCodexError,
)
from .forests import ForestCode, RootedForest, forest_decode, forest_encode
from .happy import (
    escher_insert_trace,
    happy_decode,
    happy_decode_surgery,
    happy_encode,
    happy_encode_fast,
    happy_encode_slots,
    happy_encode_surgery,
)
from .matrix_verify import laplacian, mtt_check, tree_weight_sum, ucsd_product
from .pipelines import blob_pipeline, dandelion_pipeline, happy_pipeline, matrix_decode, matrix_encode
from .poly import MultiPoly, SymMatrix, det
from .prufer import prufer_decode, prufer_encode

garsia_milne_walk = walk

__all__ = [name for name in dir() if not name.startswith("_")]
