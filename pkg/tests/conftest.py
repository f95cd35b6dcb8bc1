from pathlib import Path

import pytest

from sufficere.corpus import distinct_trees, standard_strings
from sufficere.st_construct import build_suffix_tree, to_annotated
from sufficere.tree_model import ROOT, AnnotatedTree, parse_tree

FIXTURES = Path(__file__).parent / "fixtures"


def load(name: str) -> AnnotatedTree:
    return parse_tree((FIXTURES / f"{name}.tree").read_text())


def letter_paths(t: AnnotatedTree) -> dict:
    """Map from the first letters along the root path of each node to the node."""
    out = {"": ROOT}
    path = {ROOT: ""}
    for v in t.preorder()[1:]:
        path[v] = path[t.parent[v]] + t.letter[v]
        out[path[v]] = v
    return out


def tree_of(s: str, dollar: bool = False) -> AnnotatedTree:
    return to_annotated(build_suffix_tree(s, dollar=dollar))


def star(letters: str) -> AnnotatedTree:
    """Root with one leaf per letter."""
    return AnnotatedTree.from_edges(len(letters) + 1, [(0, i + 1, a) for i, a in enumerate(letters)])


@pytest.fixture(scope="session")
def corpus_strings():
    return list(standard_strings())


@pytest.fixture(scope="session")
def corpus_trees(corpus_strings):
    return list(distinct_trees(corpus_strings))
