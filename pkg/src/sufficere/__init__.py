"""Recognizing suffix trees from their shape, first letters and suffix links."""
from .decide_dollar import Verdict, decide_dollar
from .decide_general import augment, decide_suffix_tree
from .oracle import minimal_realizer_length, oracle_decide
from .st_construct import build_suffix_tree, realizes, to_annotated
from .stg import build_stg, compute_ld, euler_tour_string
from .tree_model import AnnotatedTree, canonical_equal, parse_tree, serialize_tree

__all__ = [
    "AnnotatedTree", "Verdict", "augment", "build_stg", "build_suffix_tree",
    "canonical_equal", "compute_ld", "decide_dollar", "decide_suffix_tree",
    "euler_tour_string", "minimal_realizer_length", "oracle_decide", "parse_tree",
    "realizes", "serialize_tree", "to_annotated",
]
