"""Annotated ordered trees: the input of the suffix tree decision problem.

A tree carries its topology, the first letter on every edge and the suffix
links of its internal nodes.  The auxiliary node ``BOT`` (the parent of the
root) is never stored as a real node; it is represented by the sentinel id
``-1``.  The root's suffix link always points to ``BOT`` and the edge from
``BOT`` to the root carries the wildcard letter ``'?'``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

BOT = -1
ROOT = 0
TERMINATOR = "$"
WILDCARD = "?"


class TreeFormatError(ValueError):
    """Raised for malformed tree documents or structurally invalid trees."""

    def __init__(self, code: str, message: str, line: int | None = None, column: int | None = None):
        self.code = code
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(f"{code}: {message}{where}")


class NonPositiveEdgeError(ValueError):
    code = "NONPOSITIVE_EDGE"


@dataclass(frozen=True, eq=False)
class AnnotatedTree:
    """Immutable annotated tree on nodes ``0..n-1`` with node 0 the root.

    ``letter[v]`` is the first letter of the edge into ``v`` (``'?'`` for the
    root).  ``slink[v]`` is the suffix link of an internal node, ``BOT`` for
    the root and ``None`` where undefined.  Use :meth:`from_edges` to build
    one; it checks shape and sibling letters.
    """

    parent: tuple[int, ...]
    children: tuple[tuple[int, ...], ...]
    letter: tuple[str, ...]
    slink: tuple[int | None, ...]

    @property
    def n(self) -> int:
        return len(self.parent)

    def is_leaf(self, v: int) -> bool:
        return v != ROOT and not self.children[v]

    def is_internal(self, v: int) -> bool:
        return v == ROOT or bool(self.children[v])

    def leaves(self) -> list[int]:
        return [v for v in range(1, self.n) if not self.children[v]]

    def internal_nodes(self) -> list[int]:
        return [v for v in range(self.n) if v == ROOT or self.children[v]]

    def child(self, v: int, a: str) -> int | None:
        """Child of ``v`` whose edge starts with ``a``; ``BOT`` has the root as its only child."""
        if v == BOT:
            return ROOT
        letter = self.letter
        for c in self.children[v]:
            if letter[c] == a:
                return c
        return None

    def edges(self) -> Iterable[tuple[int, int, str]]:
        for v in range(1, self.n):
            yield self.parent[v], v, self.letter[v]

    def preorder(self) -> list[int]:
        """Nodes in preorder, children in stored order.  Cached; do not mutate."""
        return self._preorder

    @cached_property
    def _intervals(self) -> tuple[list[int], list[int]]:
        return _compute_intervals(self)

    @cached_property
    def _preorder(self) -> list[int]:
        order = []
        stack = [ROOT]
        while stack:
            v = stack.pop()
            order.append(v)
            stack.extend(reversed(self.children[v]))
        return order

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int, str]],
        slinks: Iterable[tuple[int, int]] = (),
    ) -> "AnnotatedTree":
        """Build a tree from ``(parent, child, letter)`` triples and ``(from, to)`` links.

        Children keep the order in which their edges appear.  The root link to
        ``BOT`` is added automatically.
        """
        if n < 1:
            raise TreeFormatError("SHAPE", "a tree needs at least the root")
        parent = [BOT] + [None] * (n - 1)
        letter = [WILDCARD] + [None] * (n - 1)
        children: list[list[int]] = [[] for _ in range(n)]
        seen: set[tuple[int, str]] = set()
        for p, c, a in edges:
            _check_id(p, n)
            _check_id(c, n)
            if c == ROOT:
                raise TreeFormatError("SHAPE", "the root cannot have a parent")
            if parent[c] is not None:
                raise TreeFormatError("SHAPE", f"node {c} has two parents")
            _check_letter(a)
            if (p, a) in seen:
                raise TreeFormatError(
                    "SIBLING_LETTERS", f"node {p} has two children with first letter {a!r}"
                )
            parent[c] = p
            letter[c] = a
            children[p].append(c)
            seen.add((p, a))
        missing = [v for v in range(1, n) if parent[v] is None]
        if missing:
            raise TreeFormatError("SHAPE", f"node {missing[0]} has no parent")
        _check_acyclic(parent)
        for v in range(1, n):
            if len(children[v]) == 1:
                raise TreeFormatError("SHAPE", f"internal node {v} has a single child")
            if children[v] and letter[v] == TERMINATOR:
                raise TreeFormatError("SHAPE", f"internal edge into {v} starts with '$'")

        slink: list[int | None] = [None] * n
        slink[ROOT] = BOT
        for u, w in slinks:
            _check_id(u, n)
            _check_id(w, n)
            if u != ROOT and not children[u]:
                raise TreeFormatError("SLINK_ON_LEAF", f"suffix link on leaf {u}")
            if u == ROOT:
                raise TreeFormatError("SHAPE", "the root's suffix link is implied")
            if slink[u] is not None:
                raise TreeFormatError("SHAPE", f"node {u} has two suffix links")
            slink[u] = w
        return cls(
            tuple(parent),
            tuple(tuple(c) for c in children),
            tuple(letter),
            tuple(slink),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AnnotatedTree):
            return NotImplemented
        return canonical_equal(self, other)

    def __hash__(self) -> int:
        return hash(canonical_form(self))


def _check_id(v: int, n: int) -> None:
    if not 0 <= v < n:
        raise TreeFormatError("DANGLING_REF", f"node id {v} outside 0..{n - 1}")


def _check_letter(a: str) -> None:
    if len(a) != 1 or not a.isprintable() or a.isspace() or ord(a) > 126:
        raise TreeFormatError("SYNTAX", f"letter {a!r} is not a single printable ASCII character")
    if a == WILDCARD:
        raise TreeFormatError("SYNTAX", "'?' is reserved for the edge above the root")
    if a == "#":
        raise TreeFormatError("SYNTAX", "'#' starts a comment and cannot be a letter")


def _check_acyclic(parent: list) -> None:
    n = len(parent)
    state = [0] * n  # 0 unseen, 1 on current walk, 2 reaches root
    state[ROOT] = 2
    for start in range(n):
        walk = []
        v = start
        while state[v] == 0:
            state[v] = 1
            walk.append(v)
            v = parent[v]
        if state[v] == 1:
            raise TreeFormatError("SHAPE", f"cycle through node {v}")
        for w in walk:
            state[w] = 2


# ---------------------------------------------------------------------------
# text format


def parse_tree(text: str) -> AnnotatedTree:
    """Parse the line-oriented tree format (``nodes``/``edge``/``slink`` lines)."""
    n = None
    edges = []
    slinks = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = line.split()
        if not tokens:
            continue
        kind = tokens[0]
        if n is None:
            if kind != "nodes" or len(tokens) != 2:
                raise TreeFormatError("SYNTAX", "expected 'nodes <n>' first", lineno, 1)
            n = _int(tokens[1], lineno, raw)
            if n < 1:
                raise TreeFormatError("SYNTAX", "node count must be positive", lineno)
            continue
        if kind == "edge":
            if len(tokens) != 4:
                raise TreeFormatError("SYNTAX", "expected 'edge <parent> <child> <letter>'", lineno, 1)
            p, c = _int(tokens[1], lineno, raw), _int(tokens[2], lineno, raw)
            edges.append((p, c, tokens[3], lineno))
        elif kind == "slink":
            if len(tokens) != 3:
                raise TreeFormatError("SYNTAX", "expected 'slink <from> <to>'", lineno, 1)
            slinks.append((_int(tokens[1], lineno, raw), _int(tokens[2], lineno, raw), lineno))
        else:
            raise TreeFormatError("SYNTAX", f"unknown directive {kind!r}", lineno, raw.find(kind) + 1)
    if n is None:
        raise TreeFormatError("SYNTAX", "empty document")
    if len(edges) != n - 1:
        raise TreeFormatError("SYNTAX", f"expected {n - 1} edges, found {len(edges)}")
    for p, c, a, lineno in edges:
        for v in (p, c):
            if not 0 <= v < n:
                raise TreeFormatError("DANGLING_REF", f"node id {v} outside 0..{n - 1}", lineno)
        if len(a) != 1:
            raise TreeFormatError("SYNTAX", f"letter {a!r} must be one character", lineno)
    for u, w, lineno in slinks:
        for v in (u, w):
            if not 0 <= v < n:
                raise TreeFormatError("DANGLING_REF", f"node id {v} outside 0..{n - 1}", lineno)
    return AnnotatedTree.from_edges(
        n, [(p, c, a) for p, c, a, _ in edges], [(u, w) for u, w, _ in slinks]
    )


def _int(token: str, lineno: int, raw: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise TreeFormatError("SYNTAX", f"expected an integer, got {token!r}", lineno, raw.find(token) + 1) from None


def canonicalize(t: AnnotatedTree) -> AnnotatedTree:
    """Renumber nodes in preorder with children sorted by first letter."""
    order = _canonical_order(t)
    new_id = [0] * t.n
    for i, v in enumerate(order):
        new_id[v] = i
    edges = [(new_id[t.parent[v]], new_id[v], t.letter[v]) for v in order[1:]]
    slinks = [
        (new_id[v], new_id[t.slink[v]])
        for v in order[1:]
        if t.slink[v] is not None and t.slink[v] != BOT
    ]
    return AnnotatedTree.from_edges(t.n, edges, slinks)


def serialize_tree(t: AnnotatedTree) -> str:
    c = canonicalize(t)
    lines = [f"nodes {c.n}"]
    lines += [f"edge {p} {v} {a}" for p, v, a in c.edges()]
    lines += [
        f"slink {v} {c.slink[v]}"
        for v in range(1, c.n)
        if c.slink[v] is not None
    ]
    return "\n".join(lines) + "\n"


def _canonical_order(t: AnnotatedTree) -> list[int]:
    order = []
    stack = [ROOT]
    while stack:
        v = stack.pop()
        order.append(v)
        kids = sorted(t.children[v], key=lambda c: t.letter[c])
        stack.extend(reversed(kids))
    return order


def canonical_form(t: AnnotatedTree) -> tuple:
    """Hashable form that identifies a tree up to reordering of children."""
    order = _canonical_order(t)
    new_id = {v: i for i, v in enumerate(order)}
    new_id[BOT] = BOT
    return tuple(
        (
            new_id[t.parent[v]],
            t.letter[v],
            None if t.slink[v] is None else new_id.get(t.slink[v], t.slink[v]),
        )
        for v in order
    )


def canonical_equal(t1: AnnotatedTree, t2: AnnotatedTree) -> bool:
    if t1.n != t2.n:
        return False
    return canonical_form(t1) == canonical_form(t2)


# ---------------------------------------------------------------------------
# preconditions


@dataclass(frozen=True)
class ValidationReport:
    failures: tuple[tuple[str, int], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures

    def first_rule(self) -> str | None:
        return self.failures[0][0] if self.failures else None


def validate_preconditions(t: AnnotatedTree) -> ValidationReport:
    """Check that suffix links and first letters are consistent with a suffix tree.

    P1: every internal node has a link to an internal node, the links lead to
    the root without repetition, and the string depths they imply grow
    strictly along every tree edge.  P2: for every non-root node ``x``, the
    link target ``y`` of ``par(x)`` has a child ``z`` with the same first
    letter as ``x``, and for internal ``x`` the link of ``x`` lies in the
    subtree of ``z`` (the label of ``x`` minus its first letter runs from ``y``
    through ``z``).
    """
    failures: list[tuple[str, int]] = []
    tin, tout = intervals(t)
    depth = _link_depths(t, failures)
    if depth is not None:
        for v in range(1, t.n):
            if t.children[v] and depth[v] <= depth[t.parent[v]]:
                failures.append(("P1", v))

    for x in range(1, t.n):
        p = t.parent[x]
        y = t.slink[p]
        if y is None or (y != BOT and not t.is_internal(y)):
            continue  # reported under P1
        z = t.child(y, t.letter[x])
        if z is None:
            failures.append(("P2", x))
            continue
        w = t.slink[x]
        if t.children[x] and w is not None and w != BOT and not (tin[z] <= tin[w] < tout[z]):
            failures.append(("P2", x))
    return ValidationReport(tuple(failures))


def _link_depths(t: AnnotatedTree, failures: list) -> list[int] | None:
    """Hop count from each internal node to the root; records P1 failures."""
    n = t.n
    depth = [-1] * n
    depth[ROOT] = 0
    bad = False
    for v in range(1, n):
        if not t.children[v]:
            continue
        w = t.slink[v]
        if w is None or w == BOT or not t.is_internal(w) or w == v:
            failures.append(("P1", v))
            bad = True
    if bad:
        return None
    state = [0] * n
    state[ROOT] = 2
    for start in range(1, n):
        if not t.children[start] or state[start]:
            continue
        walk = []
        v = start
        while state[v] == 0:
            state[v] = 1
            walk.append(v)
            v = t.slink[v]
        if state[v] == 1:
            failures.append(("P1", v))
            return None
        d = depth[v]
        for w in reversed(walk):
            d += 1
            depth[w] = d
            state[w] = 2
    return depth


def _compute_intervals(t: AnnotatedTree) -> tuple[list[int], list[int]]:
    """Preorder entry index and exclusive exit index for every node."""
    n = t.n
    tin = [0] * n
    tout = [0] * n
    size = [1] * n
    order = t.preorder()
    for v in reversed(order):
        if v != ROOT:
            size[t.parent[v]] += size[v]
    for i, v in enumerate(order):
        tin[v] = i
        tout[v] = i + size[v]
    return tin, tout


def compute_string_depths(t: AnnotatedTree) -> tuple[dict[int, int], dict[int, int]]:
    """String depths of internal nodes and lengths of internal edges.

    Depth is the number of suffix-link hops to the root; ``BOT`` has depth -1.
    Raises :class:`NonPositiveEdgeError` if some internal edge would have
    length at most zero.
    """
    failures: list = []
    depth = _link_depths(t, failures)
    if depth is None:
        raise ValueError(f"suffix links do not reach the root: {failures}")
    depths = {v: depth[v] for v in range(t.n) if t.is_internal(v)}
    depths[BOT] = -1
    lengths = {}
    for v in range(1, t.n):
        if t.children[v]:
            length = depth[v] - depth[t.parent[v]]
            if length <= 0:
                raise NonPositiveEdgeError(f"edge into node {v} has length {length}")
            lengths[v] = length
    return depths, lengths


def depth_array(t: AnnotatedTree) -> list[int]:
    """String depth per node as a flat list (-1 for leaves); assumes P1 holds."""
    failures: list = []
    depth = _link_depths(t, failures)
    if depth is None:
        raise ValueError(f"suffix links do not reach the root: {failures}")
    return depth


def tree_depths(t: AnnotatedTree) -> list[int]:
    """Number of tree edges between the root and each node."""
    td = [0] * t.n
    for v in t.preorder()[1:]:
        td[v] = td[t.parent[v]] + 1
    return td


def intervals(t: AnnotatedTree) -> tuple[list[int], list[int]]:
    """Preorder entry index and exclusive exit index per node (cached on the tree)."""
    return t._intervals


def top_letters(t: AnnotatedTree) -> list[str]:
    """First letter of the root edge above each node ('' for the root)."""
    top = [""] * t.n
    for v in t.preorder()[1:]:
        p = t.parent[v]
        top[v] = t.letter[v] if p == ROOT else top[p]
    return top


def relabel(t: AnnotatedTree, letters: Sequence[str]) -> AnnotatedTree:
    """Copy of ``t`` with ``letters[v]`` on the edge into each non-root ``v``."""
    edges = [(t.parent[v], v, letters[v]) for v in range(1, t.n)]
    return AnnotatedTree.from_edges(t.n, edges, _links(t))


def _links(t: AnnotatedTree) -> list[tuple[int, int]]:
    return [(v, w) for v, w in enumerate(t.slink) if v != ROOT and w is not None]
