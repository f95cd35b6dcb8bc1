"""Forward construction of suffix trees with suffix links and suffix chains.

Two builders produce the same :class:`SuffixTree` layout.  ``naive`` inserts
the suffixes one by one (quadratic, easy to audit) and is the ground truth
used by the tests.  ``ukkonen`` is the online linear-time algorithm, used to
generate large trees.
"""
from __future__ import annotations

from functools import cached_property
from typing import NamedTuple

from .tree_model import ROOT, TERMINATOR, WILDCARD, AnnotatedTree, canonical_equal


class Location(NamedTuple):
    """A point of the tree: explicit node ``node`` when ``offset == 0``,
    otherwise the implicit point ``offset`` characters below the upper end of
    the edge into ``node``."""

    node: int
    offset: int = 0

    @property
    def explicit(self) -> bool:
        return self.offset == 0


class SuffixTree:
    """Compacted trie of all suffixes of ``text``.

    Node 0 is the root.  The edge into node ``v`` is ``text[start[v]:end[v]]``
    and ``depth[v]`` is the string depth of ``v``.  ``slink`` holds the suffix
    links of internal non-root nodes, ``suffix`` the start index of each leaf.
    """

    def __init__(self, text, parent, children, start, end, depth, slink, suffix):
        self.text = text
        self.parent = parent
        self.children = children
        self.start = start
        self.end = end
        self.depth = depth
        self.slink = slink
        self.suffix = suffix

    @property
    def n(self) -> int:
        return len(self.parent)

    def is_leaf(self, v: int) -> bool:
        return v != ROOT and not self.children[v]

    def edge_length(self, v: int) -> int:
        return self.end[v] - self.start[v]

    def label(self, v: int) -> str:
        lo = self.start[v] - self.depth[self.parent[v]] if v != ROOT else 0
        return self.text[lo : lo + self.depth[v]]

    def locate(self, lo: int, hi: int) -> Location:
        """Location of the substring ``text[lo:hi]``, which must occur in the text."""
        text, children, start, end = self.text, self.children, self.start, self.end
        v = ROOT
        j = lo
        while j < hi:
            ch = children[v][text[j]]
            length = end[ch] - start[ch]
            if hi - j < length:
                return Location(ch, hi - j)
            j += length
            v = ch
        return Location(v, 0)

    def location_depth(self, loc: Location) -> int:
        if loc.explicit:
            return self.depth[loc.node]
        return self.depth[self.parent[loc.node]] + loc.offset

    @cached_property
    def chain(self) -> list[Location]:
        """Suffix chain: locations of ``text[i:]`` for ``i = 0..len(text)``, ending at the root."""
        m = len(self.text)
        return [self.locate(i, m) for i in range(m + 1)]

    @cached_property
    def min_leaf_edge(self) -> int:
        lengths = [self.edge_length(v) for v in range(1, self.n) if not self.children[v]]
        return min(lengths) if lengths else 0


def _check_text(s: str, dollar: bool) -> None:
    if WILDCARD in s:
        raise ValueError("'?' is reserved and cannot occur in a string")
    if "#" in s:
        raise ValueError("'#' cannot occur in a string")
    pos = s.find(TERMINATOR)
    if pos != -1 and (dollar or pos != len(s) - 1):
        raise ValueError("'$' may only occur once, as the last character")
    for a in s:
        if not a.isprintable() or a.isspace() or ord(a) > 126:
            raise ValueError(f"letter {a!r} is not a printable ASCII character")


def build_suffix_tree(s: str, dollar: bool = False, method: str = "naive") -> SuffixTree:
    """Suffix tree of ``s`` (of ``s + '$'`` when ``dollar``).

    Without ``dollar`` this is the general suffix tree, in which suffixes may
    end at implicit points or internal nodes.  ``s`` may end with ``'$'``
    itself; elsewhere ``'$'`` and ``'?'`` are rejected.
    """
    _check_text(s, dollar)
    text = s + TERMINATOR if dollar else s
    if method == "naive":
        st = _build_naive(text)
    elif method == "ukkonen":
        st = _build_ukkonen(text)
    else:
        raise ValueError(f"unknown construction method {method!r}")
    _fill_suffix_links(st)
    return st


def _build_naive(text: str) -> SuffixTree:
    m = len(text)
    parent = [-1]
    children: list[dict[str, int]] = [{}]
    start = [0]
    end = [0]
    depth = [0]
    suffix = [-1]

    def new_node(p, lo, hi, d, suf=-1):
        parent.append(p)
        children.append({})
        start.append(lo)
        end.append(hi)
        depth.append(d)
        suffix.append(suf)
        return len(parent) - 1

    for i in range(m):
        v = ROOT
        j = i
        while j < m:
            ch = children[v].get(text[j])
            if ch is None:
                children[v][text[j]] = new_node(v, j, m, m - i, i)
                break
            k, e = start[ch], end[ch]
            while k < e and j < m and text[k] == text[j]:
                k += 1
                j += 1
            if k == e:
                v = ch
                continue
            if j == m:
                break  # suffix ends inside the edge: implicit suffix node
            mid = new_node(v, start[ch], k, depth[v] + k - start[ch])
            children[v][text[start[ch]]] = mid
            start[ch] = k
            parent[ch] = mid
            children[mid][text[k]] = ch
            children[mid][text[j]] = new_node(mid, j, m, m - i, i)
            break
    return SuffixTree(text, parent, children, start, end, depth, [None] * len(parent), suffix)


def _build_ukkonen(text: str) -> SuffixTree:
    m = len(text)
    parent = [-1]
    children: list[dict[str, int]] = [{}]
    start = [0]
    end = [0]
    slink: list[int | None] = [None]
    suffix = [-1]

    def new_node(lo, hi, suf=-1):
        parent.append(-1)
        children.append({})
        start.append(lo)
        end.append(hi)
        slink.append(None)
        suffix.append(suf)
        return len(parent) - 1

    active_node = ROOT
    active_edge = 0
    active_len = 0
    remainder = 0
    for pos in range(m):
        c = text[pos]
        need = -1
        remainder += 1
        while remainder > 0:
            if active_len == 0:
                active_edge = pos
            ec = text[active_edge]
            nxt = children[active_node].get(ec)
            if nxt is None:
                leaf = new_node(pos, m, pos - remainder + 1)
                parent[leaf] = active_node
                children[active_node][ec] = leaf
                if need > 0:
                    slink[need] = active_node
                need = active_node
            else:
                length = (end[nxt] if end[nxt] < pos + 1 else pos + 1) - start[nxt]
                if active_len >= length:
                    active_edge += length
                    active_len -= length
                    active_node = nxt
                    continue
                if text[start[nxt] + active_len] == c:
                    active_len += 1
                    if need > 0:
                        slink[need] = active_node
                    need = active_node
                    break
                split = new_node(start[nxt], start[nxt] + active_len)
                parent[split] = active_node
                children[active_node][ec] = split
                leaf = new_node(pos, m, pos - remainder + 1)
                parent[leaf] = split
                children[split][c] = leaf
                start[nxt] += active_len
                parent[nxt] = split
                children[split][text[start[nxt]]] = nxt
                if need > 0:
                    slink[need] = split
                need = split
            remainder -= 1
            if active_node == ROOT and active_len > 0:
                active_len -= 1
                active_edge = pos - remainder + 1
            else:
                link = slink[active_node]
                active_node = link if link is not None else ROOT

    n = len(parent)
    depth = [0] * n
    stack = [ROOT]
    while stack:
        v = stack.pop()
        for ch in children[v].values():
            depth[ch] = depth[v] + end[ch] - start[ch]
            stack.append(ch)
    slink[ROOT] = None
    return SuffixTree(text, parent, children, start, end, depth, slink, suffix)


def _fill_suffix_links(st: SuffixTree) -> None:
    for v in range(1, st.n):
        if not st.children[v] or st.slink[v] is not None:
            continue
        lo = st.start[v] - st.depth[st.parent[v]]
        loc = st.locate(lo + 1, lo + st.depth[v])
        if not loc.explicit:
            raise AssertionError(f"suffix link of node {v} lands on an implicit point")
        st.slink[v] = loc.node


def to_annotated(st: SuffixTree) -> AnnotatedTree:
    """Forget edge labels and suffix markers; keep topology, links, first letters."""
    edges = []
    stack = [ROOT]
    while stack:
        v = stack.pop()
        for a, ch in st.children[v].items():
            edges.append((v, ch, a))
            stack.append(ch)
    slinks = [(v, st.slink[v]) for v in range(1, st.n) if st.children[v]]
    return AnnotatedTree.from_edges(st.n, edges, slinks)


class ChainSegments(NamedTuple):
    leaves: list[Location]
    implicit_on_leaf_edges: list[Location]
    implicit_on_internal_edges: list[Location]
    explicit_internal: list[Location]


def _category(st: SuffixTree, loc: Location) -> int:
    if loc.explicit:
        return 0 if st.is_leaf(loc.node) else 3
    return 1 if st.is_leaf(loc.node) else 2


def suffix_chain_segments(st: SuffixTree) -> ChainSegments:
    """Split the suffix chain (root excluded) into its four consecutive segments.

    Concatenating the segments and appending the root gives the chain back.
    Raises ``ValueError`` if the chain does not follow the segment order.
    """
    segments: list[list[Location]] = [[], [], [], []]
    last = 0
    for loc in st.chain[:-1]:
        cat = _category(st, loc)
        if cat < last:
            raise ValueError(f"suffix chain visits {loc} out of segment order")
        last = cat
        segments[cat].append(loc)
    return ChainSegments(*segments)


def string_from_chain(st: SuffixTree) -> str:
    """Rebuild the text from the root subtrees visited by the suffix chain."""
    top = {}
    for a, ch in st.children[ROOT].items():
        stack = [ch]
        while stack:
            v = stack.pop()
            top[v] = a
            stack.extend(st.children[v].values())
    return "".join(top[loc.node] for loc in st.chain[:-1])


def realizes(s: str, t: AnnotatedTree) -> bool:
    """True iff the (general) suffix tree of ``s`` equals ``t`` up to child order."""
    try:
        st = build_suffix_tree(s)
    except ValueError:
        return False
    if st.n != t.n:
        return False
    return canonical_equal(to_annotated(st), t)
