"""Deciding whether a tree is the suffix tree of an arbitrary string.

The tree is augmented into a $-suffix tree by choosing where the deepest
'$'-leaf ``s`` hangs: from an internal node, or from the point one character
below the upper end of some edge.  Three linear-time filters discard
locations that cannot work; the surviving ones are augmented and handed to
:func:`decide_dollar`.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from typing import NamedTuple

from .decide_dollar import Verdict, decide_dollar
from .st_construct import realizes
from .stg import LDValues, NoMatchingChildError, build_stg, compute_ld, is_eulerian
from .tree_model import (
    BOT,
    ROOT,
    TERMINATOR,
    AnnotatedTree,
    depth_array,
    intervals,
    tree_depths,
    validate_preconditions,
)


class SLocation(NamedTuple):
    """Candidate parent of ``s``: node ``node`` itself, or (``implicit``) the
    point one character below ``par(node)`` on the edge into ``node``."""

    node: int
    implicit: bool = False

    def __str__(self) -> str:
        return f"{'I' if self.implicit else 'E'}({self.node})"


class NotASuffixTree(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


def anchor(t: AnnotatedTree, loc: SLocation) -> int:
    """Deepest node of ``t`` that is an ancestor of ``s`` for this location."""
    return t.parent[loc.node] if loc.implicit else loc.node


def location_depth(t: AnnotatedTree, depth, loc: SLocation) -> int:
    return depth[t.parent[loc.node]] + 1 if loc.implicit else depth[loc.node]


def enumerate_locations(t: AnnotatedTree, depth) -> list[SLocation]:
    """Internal nodes, plus offset-1 points on leaf edges and internal edges of length >= 2."""
    children, parent = t.children, t.parent
    locs = [SLocation(v) for v in range(t.n) if v == ROOT or children[v]]
    for v in range(1, t.n):
        if not children[v] or depth[v] - depth[parent[v]] >= 2:
            locs.append(SLocation(v, True))
    locs.sort(key=lambda loc: (location_depth(t, depth, loc), loc.implicit, loc.node))
    return locs


# ---------------------------------------------------------------------------
# suffix link tree


@dataclass
class SuffixLinkTree:
    """Suffix-link successors of the implicit points, with per-point summaries.

    For an implicit point on the edge into ``x``: ``succ[x]`` is the next point
    on its suffix-link path, ``first_explicit[x]`` the first explicit node on
    that path, and ``last_implicit[x]`` the implicit point right before it.
    Points whose path breaks are listed in ``broken``.
    """

    succ: dict[int, SLocation] = field(default_factory=dict)
    first_explicit: dict[int, int] = field(default_factory=dict)
    last_implicit: dict[int, int] = field(default_factory=dict)
    broken: set[int] = field(default_factory=set)

    def path(self, t: AnnotatedTree, loc: SLocation) -> list[SLocation]:
        """Points from ``loc`` to the root, following suffix links."""
        out = [loc]
        while loc.implicit:
            loc = self.succ[loc.node]
            out.append(loc)
        v = loc.node
        while v != ROOT:
            v = t.slink[v]
            out.append(SLocation(v))
        return out


def implicit_successor(t: AnnotatedTree, depth, x: int) -> SLocation | None:
    """Suffix-link target of the point one character below ``par(x)`` on the edge into ``x``."""
    p = t.parent[x]
    if p == ROOT:
        return SLocation(ROOT)
    q = t.slink[p]
    z = t.child(q, t.letter[x])
    if z is None:
        return None
    if t.children[z] and depth[z] == depth[q] + 1:
        return SLocation(z)
    return SLocation(z, True)


def build_suffix_link_tree(t: AnnotatedTree, locations, depth) -> SuffixLinkTree:
    slt = SuffixLinkTree()
    succ, first, last, broken = slt.succ, slt.first_explicit, slt.last_implicit, slt.broken
    for loc in locations:
        if not loc.implicit or loc.node in first or loc.node in broken:
            continue
        walk = []
        x = loc.node
        end = None
        while True:
            if x in first or x in broken:
                end = x
                break
            nxt = implicit_successor(t, depth, x)
            walk.append(x)
            if nxt is None:
                break
            succ[x] = nxt
            if not nxt.implicit:
                end = None
                break
            x = nxt.node
        if not walk:
            continue
        tail = walk[-1]
        if tail in succ and not succ[tail].implicit:
            p, q = succ[tail].node, tail
        elif end is not None and end in first:
            p, q = first[end], last[end]
        else:
            broken.update(walk)
            continue
        for y in walk:
            first[y] = p
            last[y] = q
    return slt


# ---------------------------------------------------------------------------
# filters


@dataclass
class Analysis:
    """Everything the filters share about one input tree."""

    t: AnnotatedTree
    depth: list[int]
    ld: LDValues
    tin: list[int]
    tout: list[int]
    locations: list[SLocation]
    slt: SuffixLinkTree
    deepest_neg: int | None = None
    twist: dict = field(default_factory=dict)
    trace: dict = field(default_factory=dict)


def step1_filter(t: AnnotatedTree, ld: LDValues, locations, tin, tout) -> tuple[list[SLocation], int | None]:
    """Keep locations compatible with the negative ``d`` values.

    Raises :class:`NotASuffixTree` when some ``d <= -2`` or the nodes with
    ``d = -1`` do not all lie on one root path.
    """
    d = ld.d
    if min(d) <= -2:
        raise NotASuffixTree("D_LE_MINUS2")
    negative = [v for v in range(t.n) if d[v] == -1]
    if not negative:
        return list(locations), None
    td = tree_depths(t)
    x = max(negative, key=lambda v: (td[v], -v))
    on_path = set()
    v = x
    while v != BOT:
        on_path.add(v)
        v = t.parent[v]
    if any(v not in on_path for v in negative):
        raise NotASuffixTree("NEG_D_NOT_ANCESTORS")
    lo, hi = tin[x], tout[x]
    survivors = []
    for loc in locations:
        v = loc.node
        if loc.implicit:
            if v == x:
                keep = d[x] + ld.ell[x] >= 0
            else:
                keep = lo < tin[v] < hi
        else:
            keep = lo <= tin[v] < hi
        if keep:
            survivors.append(loc)
    return survivors, x


def step2_filter(t: AnnotatedTree, ld: LDValues, survivors, slt: SuffixLinkTree, twist: dict | None = None) -> list[SLocation]:
    """Drop locations whose twist node cannot absorb the loss of one ``d`` unit.

    When the implicit point right before the first explicit node ``p`` on the
    location's suffix-link path lies on a leaf edge, a twist node exists among
    the children of ``p``; it needs ``d > 0``, or ``d = 0`` while being an
    ancestor of ``s``.  Candidate twist children are recorded in ``twist``.
    """
    d = ld.d
    children, letter = t.children, t.letter
    has_positive = [any(d[c] > 0 for c in children[v]) for v in range(t.n)]
    by_anchor: dict[int, list[SLocation]] = {}
    result: dict[SLocation, bool] = {}
    for loc in survivors:
        if not loc.implicit:
            result[loc] = True
            continue
        x = loc.node
        if x in slt.broken:
            result[loc] = False
            continue
        q = slt.last_implicit[x]
        if children[q]:
            result[loc] = True  # last implicit point is on an internal edge: no twist
            continue
        by_anchor.setdefault(anchor(t, loc), []).append(loc)

    # depth-first traversal remembering, for each node on the current path,
    # its child towards the current node
    path_child = [-1] * t.n
    on_path = [False] * t.n
    stack = [(ROOT, False)]
    while stack:
        v, leaving = stack.pop()
        if leaving:
            on_path[v] = False
            continue
        on_path[v] = True
        if v != ROOT:
            path_child[t.parent[v]] = v
        for loc in by_anchor.get(v, ()):
            p = slt.first_explicit[loc.node]
            if p == v:
                toward = loc.node  # s hangs on the edge into loc.node
            else:
                toward = path_child[p] if on_path[p] else -1
            ok = has_positive[p] or (toward >= 0 and d[toward] >= 0)
            result[loc] = ok
            if ok and twist is not None:
                cands = []
                if toward >= 0 and d[toward] >= 0:
                    cands.append(toward)
                cands += sorted(
                    (c for c in children[p] if d[c] > 0 and c != toward), key=letter.__getitem__
                )
                twist[loc] = (p, cands)
        stack.append((v, True))
        stack.extend((c, False) for c in reversed(children[v]))
    return [loc for loc in survivors if result[loc]]


def step3_filter(t: AnnotatedTree, ld: LDValues, survivors, deepest_neg: int | None) -> list[SLocation]:
    """Keep locations whose root path touches every tour-graph component with leaves.

    The arcs ``root -> ... -> par(x)`` for the deepest node ``x`` with
    ``d(x) = -1`` are added first, cancelling against opposite arcs.
    """
    n = t.n
    parent, children = t.parent, t.children
    d = list(ld.d)
    if deepest_neg is not None:
        v = parent[deepest_neg]
        while v != ROOT and v != BOT:
            d[v] += 1
            v = parent[v]

    uf = list(range(n))

    def find(a):
        while uf[a] != a:
            uf[a] = uf[uf[a]]
            a = uf[a]
        return a

    active = [False] * n
    for x in range(1, n):
        if d[x] != 0:
            active[x] = active[parent[x]] = True
            ra, rb = find(x), find(parent[x])
            if ra != rb:
                uf[ra] = rb
    for y, x in enumerate(ld.target):
        if x >= 0:
            active[x] = active[y] = True
            ra, rb = find(x), find(y)
            if ra != rb:
                uf[ra] = rb
    color = [-1] * n
    colors = {}
    for y in range(1, n):
        if not children[y]:
            r = find(y)
            colors.setdefault(r, len(colors))
    for v in range(n):
        if active[v]:
            r = find(v)
            if r in colors:
                color[v] = colors[r]
    total = len(colors)

    by_anchor: dict[int, list[SLocation]] = {}
    for loc in survivors:
        by_anchor.setdefault(anchor(t, loc), []).append(loc)
    ell = ld.ell
    keep = set()
    count = [0] * total
    distinct = 0
    stack = [(ROOT, False)]
    while stack:
        v, leaving = stack.pop()
        c = color[v]
        if leaving:
            if c >= 0:
                count[c] -= 1
                if count[c] == 0:
                    distinct -= 1
            continue
        if c >= 0:
            count[c] += 1
            if count[c] == 1:
                distinct += 1
        for loc in by_anchor.get(v, ()):
            if distinct == total:
                keep.add(loc)
            elif loc.implicit and distinct == total - 1 and ell[loc.node] > 0:
                # the split point takes over the link arcs into loc.node
                cx = color[loc.node]
                if cx >= 0 and count[cx] == 0:
                    keep.add(loc)
        stack.append((v, True))
        stack.extend((ch, False) for ch in reversed(children[v]))
    return [loc for loc in survivors if loc in keep]


# ---------------------------------------------------------------------------
# augmentation


class SplitConflict(ValueError):
    code = "SPLIT_CONFLICT"


def augment(
    t: AnnotatedTree,
    loc: SLocation,
    twist_letter: str | None = None,
    depth=None,
    slt: SuffixLinkTree | None = None,
    tin=None,
) -> AnnotatedTree:
    """Add the '$'-leaves for ``s`` hanging at ``loc`` and along its suffix-link path.

    Implicit points become explicit nodes; the remainder of each split edge
    gets the letter that follows the point, which for leaf-edge remainders
    before the first explicit node is ``twist_letter``.
    """
    if depth is None:
        depth = depth_array(t)
    if tin is None:
        tin, _ = intervals(t)
    if slt is None:
        slt = build_suffix_link_tree(t, [loc], depth)
    if loc.implicit and loc.node in slt.broken:
        raise SplitConflict(f"suffix-link path from {loc} breaks")
    path = slt.path(t, loc)

    k = len(path)
    rest = [None] * k
    for i in range(k - 1, -1, -1):
        u = path[i]
        if not u.implicit:
            continue
        nxt = path[i + 1]
        x = u.node
        if nxt.implicit:
            rest[i] = rest[i + 1]
        elif t.children[x]:
            rest[i] = _letter_below(t, nxt.node, t.slink[x], tin)
        else:
            if twist_letter is None:
                raise SplitConflict(f"{u} needs a twist letter")
            rest[i] = twist_letter

    parent = list(t.parent)
    letter = list(t.letter)
    children = [list(c) for c in t.children]
    slink = list(t.slink)

    def new_node(p, a):
        parent.append(p)
        letter.append(a)
        children.append([])
        slink.append(None)
        return len(parent) - 1

    node_of = [0] * k
    for i, u in enumerate(path):
        if not u.implicit:
            node_of[i] = u.node
            continue
        x = u.node
        p = parent[x]
        mid = new_node(p, letter[x])
        kids = children[p]
        kids[kids.index(x)] = mid
        children[mid].append(x)
        parent[x] = mid
        letter[x] = rest[i]
        node_of[i] = mid
    for i, u in enumerate(path):
        v = node_of[i]
        leaf = new_node(v, TERMINATOR)
        children[v].append(leaf)
        if u.implicit:
            slink[v] = node_of[i + 1]

    edges = [(p, c, letter[c]) for p in range(len(parent)) for c in children[p]]
    links = [(v, w) for v, w in enumerate(slink) if v != ROOT and w is not None]
    try:
        return AnnotatedTree.from_edges(len(parent), edges, links)
    except ValueError as exc:
        raise SplitConflict(str(exc)) from exc


def _letter_below(t: AnnotatedTree, z: int, w: int, tin) -> str:
    """First letter of the child of ``z`` whose subtree contains ``w``."""
    kids = t.children[z]
    i = bisect_right([tin[c] for c in kids], tin[w]) - 1
    if i < 0 or w == z:
        raise SplitConflict(f"node {w} is not below node {z}")
    c = kids[i]
    # w must lie inside the subtree of c
    if i + 1 < len(kids) and tin[w] >= tin[kids[i + 1]]:
        raise SplitConflict(f"node {w} is not below node {z}")
    return t.letter[c]


# ---------------------------------------------------------------------------
# decision


def analyse(t: AnnotatedTree) -> Analysis:
    """Run validation and all three filters; raises :class:`NotASuffixTree`."""
    report = validate_preconditions(t)
    if not report.ok:
        raise NotASuffixTree("PRECONDITION_" + report.first_rule())
    depth = depth_array(t)
    try:
        ld = compute_ld(t)
    except NoMatchingChildError:
        raise NotASuffixTree("PRECONDITION_P2") from None
    tin, tout = intervals(t)
    locations = enumerate_locations(t, depth)
    slt = build_suffix_link_tree(t, locations, depth)
    a = Analysis(t, depth, ld, tin, tout, locations, slt)
    s1, a.deepest_neg = step1_filter(t, ld, locations, tin, tout)
    if not is_eulerian(build_stg(t, ld)):
        raise NotASuffixTree("NOT_EULERIAN")
    s2 = step2_filter(t, ld, s1, slt, a.twist)
    s3 = step3_filter(t, ld, s2, a.deepest_neg)
    in1, in2, in3 = set(s1), set(s2), set(s3)
    for loc in locations:
        a.trace[loc] = [loc in in1, loc in in2, loc in in3, None]
    a.survivors = s3
    return a


def try_location(a: Analysis, loc: SLocation, verify: bool = True, twist_choices=None) -> Verdict:
    """Augment at ``loc`` (trying each twist candidate) and decide the result."""
    t = a.t
    if twist_choices is None:
        if loc in a.twist:
            p, cands = a.twist[loc]
            twist_choices = [t.letter[c] for c in cands]
        else:
            twist_choices = [None]
    for letter in twist_choices:
        try:
            aug = augment(t, loc, letter, a.depth, a.slt, a.tin)
        except ValueError:
            continue
        v = decide_dollar(aug, verify=False)
        if not v.ok:
            continue
        s = v.string[:-1]
        if verify and not realizes(s, t):
            continue
        return Verdict(True, string=s, location=loc, augmented=aug)
    return Verdict(False, "NO_SURVIVOR", location=loc)


def decide_suffix_tree(t: AnnotatedTree, verify: bool = True, trace: bool = False) -> Verdict:
    """Decide whether some string realizes ``t``; on success return one.

    Trees that already carry '$' letters can only be realized by a string
    ending in '$', so they are handed to :func:`decide_dollar`.
    """
    if any(a == TERMINATOR for a in t.letter):
        return decide_dollar(t, verify=verify)
    try:
        a = analyse(t)
    except NotASuffixTree as exc:
        return Verdict(False, exc.reason)
    for loc in a.survivors:
        v = try_location(a, loc, verify)
        a.trace[loc][3] = v.ok
        if v.ok:
            return Verdict(True, string=v.string, location=loc, augmented=v.augmented,
                           trace=_trace_rows(a) if trace else ())
    return Verdict(False, "NO_SURVIVOR", trace=_trace_rows(a) if trace else ())


def _trace_rows(a: Analysis) -> tuple:
    return tuple((loc, *a.trace[loc]) for loc in a.locations)
