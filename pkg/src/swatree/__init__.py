"""Size-constrained weighted ancestor queries on rooted trees, with string applications."""

from .bitrank import BitVector, build_bitvector
from .smallpred import SmallPredecessorSet, build_small_set
from .treecore import (
    RootedTree,
    HeavyPathDecomposition,
    LcaStructure,
    build_tree,
    compute_sizes,
    validate_weights,
    heavy_path_decomposition,
    representative_leaf,
)
from .swa_log import PathEncoding, SwaIndexLog, encode_path, path_lowest_with_weight, build_swa_log, swa_query_log
from .swa_linear import SwaIndexLinear, build_swa_linear, swa_query_linear, contract_tree, art_decompose
from .stringindex import (
    SuffixTree,
    build_suffix_tree,
    build_generalized_suffix_tree,
    leaf_count_weights,
    document_frequency_weights,
    locus_of_substring,
    matching_statistics,
)
from .apps import IlfpIndex, LfsIndex, ComplexityTable, ilfp, lfs_dict, lfs_text, substring_complexity

__all__ = [
    "BitVector",
    "build_bitvector",
    "SmallPredecessorSet",
    "build_small_set",
    "RootedTree",
    "HeavyPathDecomposition",
    "LcaStructure",
    "build_tree",
    "compute_sizes",
    "validate_weights",
    "heavy_path_decomposition",
    "representative_leaf",
    "PathEncoding",
    "SwaIndexLog",
    "encode_path",
    "path_lowest_with_weight",
    "build_swa_log",
    "swa_query_log",
    "SwaIndexLinear",
    "build_swa_linear",
    "swa_query_linear",
    "contract_tree",
    "art_decompose",
    "SuffixTree",
    "build_suffix_tree",
    "build_generalized_suffix_tree",
    "leaf_count_weights",
    "document_frequency_weights",
    "locus_of_substring",
    "matching_statistics",
    "IlfpIndex",
    "LfsIndex",
    "ComplexityTable",
    "ilfp",
    "lfs_dict",
    "lfs_text",
    "substring_complexity",
]
