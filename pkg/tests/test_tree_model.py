import random

import pytest

from sufficere.tree_model import (
    BOT,
    ROOT,
    AnnotatedTree,
    NonPositiveEdgeError,
    TreeFormatError,
    canonical_equal,
    canonicalize,
    compute_string_depths,
    parse_tree,
    serialize_tree,
    validate_preconditions,
)
from sufficere.st_construct import build_suffix_tree

from conftest import letter_paths, load, tree_of


def shuffled(t: AnnotatedTree, seed: int) -> AnnotatedTree:
    """Same tree with node ids permuted and child lists shuffled."""
    rng = random.Random(seed)
    perm = [0] + rng.sample(range(1, t.n), t.n - 1)
    edges = [(perm[p], perm[c], a) for p, c, a in t.edges()]
    rng.shuffle(edges)
    links = [(perm[v], perm[w]) for v, w in enumerate(t.slink) if v != ROOT and w is not None]
    return AnnotatedTree.from_edges(t.n, edges, links)


def test_parse_dollar_abaaa():
    t = load("dollar_abaaa")
    assert t.n == 9
    assert len(t.leaves()) == 6
    assert len(t.internal_nodes()) == 3
    paths = letter_paths(t)
    assert t.slink[paths["aa"]] == paths["a"]
    assert t.slink[paths["a"]] == ROOT
    assert t.slink[ROOT] == BOT


def test_parse_single_root():
    t = parse_tree("nodes 1\n")
    assert t.n == 1 and t.children[ROOT] == ()
    assert serialize_tree(t) == "nodes 1\n"


def test_parse_keeps_file_order_and_comments():
    t = parse_tree("# header\nnodes 3\nedge 0 2 b  # trailing\n\nedge 0 1 a\n")
    assert t.children[ROOT] == (2, 1)


@pytest.mark.parametrize(
    "text, code",
    [
        ("nodes 3\nedge 0 1 a\nedge 0 2 a\n", "SIBLING_LETTERS"),
        ("nodes 3\nedge 0 1 a\nedge 0 2 b\nslink 1 0\n", "SLINK_ON_LEAF"),
        ("nodes 3\nedge 0 1 a\nedge 0 5 b\n", "DANGLING_REF"),
        ("nodes 3\nedge 0 1 a\nedge 0 2 b\nslink 1 7\n", "DANGLING_REF"),
        ("nodes 3\nedge 0 1 a\n", "SYNTAX"),
        ("edge 0 1 a\n", "SYNTAX"),
        ("nodes x\n", "SYNTAX"),
        ("nodes 2\nedge 0 1 ab\n", "SYNTAX"),
        ("nodes 2\nedge 0 1 ?\n", "SYNTAX"),
        ("nodes 2\nvertex 0 1 a\n", "SYNTAX"),
        ("nodes 3\nedge 0 1 a\nedge 1 2 b\n", "SHAPE"),
        ("nodes 4\nedge 0 1 a\nedge 1 2 $\nedge 2 3 b\n", "SHAPE"),
        ("nodes 3\nedge 0 1 a\nedge 0 1 b\n", "SHAPE"),
    ],
)
def test_parse_errors(text, code):
    with pytest.raises(TreeFormatError) as exc:
        parse_tree(text)
    assert exc.value.code == code


def test_syntax_error_reports_position():
    with pytest.raises(TreeFormatError) as exc:
        parse_tree("nodes 2\nedge 0 one a\n")
    assert exc.value.line == 2 and exc.value.column == 8


def test_root_may_have_one_child():
    t = tree_of("aaa")
    assert len(t.children[ROOT]) == 1
    assert validate_preconditions(t).ok


def test_serialize_roundtrip_plain_ababaa():
    t = load("plain_ababaa")
    text = serialize_tree(t)
    assert canonical_equal(parse_tree(text), t)
    assert serialize_tree(parse_tree(text)) == text


def test_serialize_is_canonical(corpus_trees):
    for s, t in corpus_trees[::7]:
        u = shuffled(t, len(s))
        assert serialize_tree(u) == serialize_tree(t), s
        assert canonical_equal(u, t) and u == t and hash(u) == hash(t)
        assert canonical_equal(canonicalize(u), t)


def test_canonical_equal_distinguishes():
    assert canonical_equal(load("plain_abaabab"), tree_of("abaabab"))
    assert not canonical_equal(load("plain_abaabab"), load("crossed_links"))
    # same shape and letters, different link
    a = parse_tree("nodes 5\nedge 0 1 a\nedge 1 2 a\nedge 1 3 b\nedge 0 4 b\nslink 1 0\n")
    b = parse_tree("nodes 5\nedge 0 1 a\nedge 1 2 a\nedge 1 3 b\nedge 0 4 b\nslink 1 1\n")
    assert not canonical_equal(a, b)


def test_canonical_equal_is_equivalence(corpus_trees):
    sample = [t for _, t in corpus_trees[:60]]
    for x in sample:
        assert canonical_equal(x, x)
        for y in sample:
            assert canonical_equal(x, y) == canonical_equal(y, x)
            assert canonical_equal(x, y) == (x is y)


def test_validate_corpus_ok(corpus_trees):
    for s, t in corpus_trees:
        assert validate_preconditions(t).ok, s


def test_validate_link_cycle_is_p1():
    t = parse_tree(
        "nodes 7\nedge 0 1 a\nedge 1 2 a\nedge 1 3 b\nedge 0 4 b\nedge 4 5 a\nedge 4 6 b\n"
        "slink 1 4\nslink 4 1\n"
    )
    report = validate_preconditions(t)
    assert not report.ok and report.first_rule() == "P1"


def test_validate_missing_link_is_p1():
    t = parse_tree("nodes 5\nedge 0 1 a\nedge 1 2 a\nedge 1 3 b\nedge 0 4 b\n")
    assert validate_preconditions(t).first_rule() == "P1"


def test_validate_link_to_leaf_is_p1():
    t = parse_tree("nodes 5\nedge 0 1 a\nedge 1 2 a\nedge 1 3 b\nedge 0 4 b\nslink 1 4\n")
    assert validate_preconditions(t).first_rule() == "P1"


def test_validate_missing_letter_is_p2():
    # leaf "ac": the root has no child starting with 'c'
    t = parse_tree("nodes 5\nedge 0 1 a\nedge 1 2 a\nedge 1 3 c\nedge 0 4 b\nslink 1 0\n")
    report = validate_preconditions(t)
    assert report.first_rule() == "P2"
    assert ("P2", 3) in report.failures


def test_validate_crossed_links_is_p2():
    assert validate_preconditions(load("crossed_links")).first_rule() == "P2"


def test_string_depths_dollar_abaaa():
    t = load("dollar_abaaa")
    paths = letter_paths(t)
    depths, lengths = compute_string_depths(t)
    assert depths[ROOT] == 0 and depths[BOT] == -1
    assert depths[paths["a"]] == 1
    assert depths[paths["aa"]] == 2
    assert lengths == {paths["a"]: 1, paths["aa"]: 1}


def test_string_depths_single_root():
    depths, lengths = compute_string_depths(parse_tree("nodes 1\n"))
    assert depths == {ROOT: 0, BOT: -1} and lengths == {}


def test_string_depths_long_sample():
    st = build_suffix_tree("abaababaababaa")
    t = tree_of("abaababaababaa")
    depths, _ = compute_string_depths(t)
    labels = {st.label(v): v for v in range(st.n) if st.children[v]}
    assert sorted(labels) == ["", "a", "aba", "ba"]
    assert [depths[labels[w]] for w in ("", "a", "ba", "aba")] == [0, 1, 2, 3]


def test_string_depths_match_labels(corpus_strings):
    from sufficere.st_construct import to_annotated

    for s in corpus_strings:
        if len(s) > 10 or set(s) - {"a", "b"}:
            continue
        st = build_suffix_tree(s)
        depths, _ = compute_string_depths(to_annotated(st))
        for v in range(st.n):
            if v == ROOT or st.children[v]:
                assert depths[v] == st.depth[v], (s, v)


def test_nonpositive_edge():
    # child "ab" links so that its depth equals its parent's
    t = parse_tree(
        "nodes 9\nedge 0 1 a\nedge 1 2 b\nedge 2 3 a\nedge 2 4 b\nedge 1 5 a\n"
        "edge 0 6 b\nedge 6 7 a\nedge 6 8 b\nslink 1 6\nslink 2 0\nslink 6 0\n"
    )
    assert validate_preconditions(t).first_rule() == "P1"
    with pytest.raises(NonPositiveEdgeError):
        compute_string_depths(t)
