import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st_

from sufficere.corpus import all_strings
from sufficere.st_construct import (
    Location,
    build_suffix_tree,
    realizes,
    suffix_chain_segments,
    to_annotated,
)
from sufficere.tree_model import ROOT, canonical_equal, parse_tree

from conftest import load
from properties import (
    check_chain_spells_string,
    check_leaf_edge_bound,
    check_one_letter_extension,
    check_parent_distance,
    check_segment_order,
    check_trimmed_prefix,
)

SMALL = list(all_strings("ab", 8)) + list(all_strings("abc", 5))


def brute_suffix_tree_nodes(s):
    """Labels of the internal nodes and leaves, straight from the definition."""
    subs = {s[i:j] for i in range(len(s) + 1) for j in range(i, len(s) + 1)}
    suffixes = {s[i:] for i in range(len(s))}
    internal = {w for w in subs if len({x for x in subs if x[:-1] == w and x}) >= 2}
    internal.add("")
    leaves = {w for w in suffixes if not any(x != w and x.startswith(w) for x in subs)}
    return internal, leaves


def test_long_sample_tree():
    st = build_suffix_tree("abaababaababaa")
    leaves = [v for v in range(1, st.n) if st.is_leaf(v)]
    assert len(leaves) == 5
    assert len(st.chain) == 15
    seg = suffix_chain_segments(st)
    assert [len(x) for x in seg] == [5, 8, 0, 1]
    assert all(st.is_leaf(loc.node) and loc.explicit for loc in st.chain[:5])
    # the trimmed prefix abaabab has the same annotated tree
    assert canonical_equal(to_annotated(st), to_annotated(build_suffix_tree("abaabab")))


def test_empty_string():
    st = build_suffix_tree("")
    assert st.n == 1 and st.chain == [Location(ROOT)]
    assert canonical_equal(to_annotated(st), parse_tree("nodes 1\n"))
    assert realizes("", parse_tree("nodes 1\n"))


def test_dollar_abaaa_from_string():
    assert canonical_equal(to_annotated(build_suffix_tree("abaaa", dollar=True)), load("dollar_abaaa"))


def test_plain_abaabab_and_plain_ababaa_from_strings():
    assert canonical_equal(to_annotated(build_suffix_tree("abaabab")), load("plain_abaabab"))
    assert canonical_equal(to_annotated(build_suffix_tree("ababaa")), load("plain_ababaa"))


def test_realizes_examples():
    plain_abaabab = load("plain_abaabab")
    assert realizes("abaabab", plain_abaabab)
    assert not realizes("abaaba", plain_abaabab)
    assert not realizes("ab$ab", plain_abaabab)


def test_chain_of_aa():
    st = build_suffix_tree("aa")
    leaf = st.children[ROOT]["a"]
    assert st.chain == [Location(leaf), Location(leaf, 1), Location(ROOT)]
    assert [len(x) for x in suffix_chain_segments(st)] == [1, 1, 0, 0]


@pytest.mark.parametrize("s", ["", "a", "abab", "abaababaababaa", "mississippi"])
def test_dollar_chain_is_all_leaves(s):
    st = build_suffix_tree(s, dollar=True)
    seg = suffix_chain_segments(st)
    assert len(seg.leaves) == len(s) + 1
    assert not seg.implicit_on_leaf_edges and not seg.implicit_on_internal_edges
    assert not seg.explicit_internal


@pytest.mark.parametrize("bad", ["a?b", "a$b", "a#", "a b", "é"])
def test_reserved_letters_rejected(bad):
    with pytest.raises(ValueError):
        build_suffix_tree(bad)


def test_dollar_flag_rejects_dollar():
    with pytest.raises(ValueError):
        build_suffix_tree("ab$", dollar=True)
    # a trailing '$' without the flag is the same tree
    assert canonical_equal(
        to_annotated(build_suffix_tree("ab$")), to_annotated(build_suffix_tree("ab", dollar=True))
    )


@pytest.mark.parametrize("s", SMALL[::3])
def test_matches_definition(s):
    st = build_suffix_tree(s)
    internal, leaves = brute_suffix_tree_nodes(s)
    got_internal = {st.label(v) for v in range(st.n) if v == ROOT or st.children[v]}
    got_leaves = {st.label(v) for v in range(1, st.n) if not st.children[v]}
    assert got_internal == internal
    assert got_leaves == leaves


def test_each_suffix_located(corpus_strings):
    for s in corpus_strings[::5]:
        st = build_suffix_tree(s)
        for i, loc in enumerate(st.chain):
            assert st.location_depth(loc) == len(s) - i
            node_label = st.label(loc.node)
            assert node_label[: len(s) - i] == s[i:]


def test_suffix_links_point_to_label_tail(corpus_strings):
    for s in corpus_strings[::5]:
        st = build_suffix_tree(s)
        for v in range(1, st.n):
            if st.children[v]:
                assert st.label(st.slink[v]) == st.label(v)[1:]


@pytest.mark.parametrize("dollar", [False, True])
def test_ukkonen_agrees_with_naive(dollar):
    for s in itertools.chain(all_strings("ab", 9), all_strings("abc", 6)):
        a = build_suffix_tree(s, dollar=dollar)
        b = build_suffix_tree(s, dollar=dollar, method="ukkonen")
        assert canonical_equal(to_annotated(a), to_annotated(b)), s
        assert [a.location_depth(x) for x in a.chain] == [b.location_depth(x) for x in b.chain]


@settings(max_examples=150, deadline=None)
@given(st_.text(alphabet="abcd", max_size=40))
def test_ukkonen_agrees_random(s):
    a = to_annotated(build_suffix_tree(s))
    b = to_annotated(build_suffix_tree(s, method="ukkonen"))
    assert canonical_equal(a, b)
    assert realizes(s, b)


def test_unknown_method():
    with pytest.raises(ValueError):
        build_suffix_tree("ab", method="mccreight")


def test_structural_properties_small():
    for s in SMALL:
        check_segment_order(s)
        check_parent_distance(s)
        check_leaf_edge_bound(s)
        check_trimmed_prefix(s)
        check_one_letter_extension(s)
        check_chain_spells_string(s)
