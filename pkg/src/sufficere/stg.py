"""Suffix tour graphs.

Every node ``x`` gets two values: ``ell[x]``, the number of leaves whose
suffix-link arc points at ``x``, and ``d[x]``, the number of leaves below
``x`` minus the sum of ``ell`` over the subtree of ``x``.  The tour graph has
``d[x]`` parallel arcs ``par(x) -> x`` (reversed when negative) and one arc
from every leaf ``y`` to the child of ``slink(par(y))`` that has the same first
letter as ``y``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

from .tree_model import BOT, ROOT, TERMINATOR, AnnotatedTree, top_letters


class NoMatchingChildError(ValueError):
    code = "NO_MATCHING_CHILD"


@dataclass(frozen=True)
class LDValues:
    ell: tuple[int, ...]
    d: tuple[int, ...]
    # For a leaf, the node its suffix-link arc points to; -2 for internal nodes.
    target: tuple[int, ...]


def compute_ld(t: AnnotatedTree) -> LDValues:
    n = t.n
    parent, letter, slink, children = t.parent, t.letter, t.slink, t.children
    ell = [0] * n
    target = [-2] * n
    for y in range(1, n):
        if children[y]:
            continue
        w = slink[parent[y]]
        if w is None:
            raise NoMatchingChildError(f"parent of leaf {y} has no suffix link")
        x = t.child(w, letter[y])
        if x is None:
            raise NoMatchingChildError(f"no child of node {w} starts with {letter[y]!r}")
        ell[x] += 1
        target[y] = x
    d = [0] * n
    for v in reversed(t.preorder()):
        if not children[v] and v != ROOT:
            d[v] += 1
        d[v] -= ell[v]
        if v != ROOT:
            d[parent[v]] += d[v]
    return LDValues(tuple(ell), tuple(d), tuple(target))


class Arc(NamedTuple):
    tail: int
    head: int
    mult: int
    kind: str  # "tree" or "link"


class SuffixTourGraph:
    """Tour graph over the nodes of ``tree`` plus ``BOT``.

    Arcs are implied by the stored ``d`` values and leaf targets, so a graph
    with modified multiplicities is cheap to derive with :meth:`with_d`.
    """

    def __init__(self, tree: AnnotatedTree, ld: LDValues, d: Sequence[int] | None = None):
        self.tree = tree
        self.ld = ld
        self.d = tuple(ld.d) if d is None else tuple(d)

    def with_d(self, d: Sequence[int]) -> "SuffixTourGraph":
        return SuffixTourGraph(self.tree, self.ld, d)

    def arcs(self) -> Iterator[Arc]:
        t, d = self.tree, self.d
        for x in range(t.n):
            k = d[x]
            if k > 0:
                yield Arc(t.parent[x], x, k, "tree")
            elif k < 0:
                yield Arc(x, t.parent[x], -k, "tree")
        for y, x in enumerate(self.ld.target):
            if x >= 0:
                yield Arc(y, x, 1, "link")

    def degrees(self) -> tuple[list[int], list[int]]:
        """In- and out-degree per node; index ``n`` stands for ``BOT``."""
        n = self.tree.n
        indeg = [0] * (n + 1)
        outdeg = [0] * (n + 1)
        for tail, head, k, _ in self.arcs():
            outdeg[tail] += k  # BOT (-1) lands on index n
            indeg[head] += k
        return indeg, outdeg

    def out_arcs(self) -> list[list[list[int]]]:
        """Mutable ``[head, multiplicity]`` lists per node in tour order.

        Order: arcs to children by first letter, then the reversed arc to the
        parent, then the suffix-link arc.  Index ``n`` is ``BOT``.
        """
        t, d, target = self.tree, self.d, self.ld.target
        n = t.n
        letter = t.letter
        out: list[list[list[int]]] = [[] for _ in range(n + 1)]
        if d[ROOT] > 0:
            out[n].append([ROOT, d[ROOT]])
        for v in range(n):
            kids = t.children[v]
            if len(kids) > 1:
                kids = sorted(kids, key=letter.__getitem__)
            arcs = out[v]
            for c in kids:
                if d[c] > 0:
                    arcs.append([c, d[c]])
            if d[v] < 0:
                arcs.append([t.parent[v] if v != ROOT else n, -d[v]])
            if target[v] >= 0:
                arcs.append([target[v], 1])
        return out


def build_stg(t: AnnotatedTree, ld: LDValues | None = None) -> SuffixTourGraph:
    return SuffixTourGraph(t, compute_ld(t) if ld is None else ld)


def is_eulerian(g: SuffixTourGraph) -> bool:
    indeg, outdeg = g.degrees()
    return indeg == outdeg


def euler_cycle(g: SuffixTourGraph, start: int = ROOT) -> list[int]:
    """Closed walk from ``start`` using every arc of its component once (Hierholzer)."""
    out = g.out_arcs()
    n = g.tree.n
    s = n if start == BOT else start
    ptr = [0] * (n + 1)
    stack = [s]
    circuit = []
    while stack:
        v = stack[-1]
        arcs = out[v]
        i = ptr[v]
        while i < len(arcs) and arcs[i][1] == 0:
            i += 1
        ptr[v] = i
        if i < len(arcs):
            arcs[i][1] -= 1
            stack.append(arcs[i][0])
        else:
            circuit.append(stack.pop())
    circuit.reverse()
    return [BOT if v == n else v for v in circuit]


def euler_tour_string(g: SuffixTourGraph) -> str | None:
    """String spelled by the leaves of an Euler cycle through the root.

    The i-th letter is the first letter below the root on the path to the
    i-th leaf of the cycle.  The closed walk passes the root several times;
    when a '$' leaf hangs from the root, the walk is read starting at the root
    visit that follows it, so that '$' comes last.  Returns ``None`` when the
    root's component does not contain every leaf.
    """
    t = g.tree
    leaves = t.leaves()
    cycle = euler_cycle(g, ROOT)
    children = t.children
    visited = [v for v in cycle[1:] if v != BOT and v != ROOT and not children[v]]
    if len(visited) != len(leaves) or len(set(visited)) != len(leaves):
        return None
    top = top_letters(t)
    end = t.child(ROOT, TERMINATOR)
    if end is not None and not children[end]:
        i = visited.index(end) + 1
        visited = visited[i:] + visited[:i]
    return "".join(top[v] for v in visited)


def to_dot(g: SuffixTourGraph) -> str:
    """Graphviz rendering: tree arcs solid, suffix-link arcs dashed, multiplicity as label."""
    t = g.tree
    lines = ["digraph stg {", '  bot [label="⊥"];']
    for v in range(t.n):
        shape = "circle" if t.is_internal(v) else "point"
        lines.append(f'  n{v} [shape={shape}, xlabel="{v}"];')
    for tail, head, k, kind in g.arcs():
        a = "bot" if tail == BOT else f"n{tail}"
        b = "bot" if head == BOT else f"n{head}"
        style = "solid" if kind == "tree" else "dashed"
        lines.append(f'  {a} -> {b} [style={style}, label="{k}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def ld_table(t: AnnotatedTree, ld: LDValues) -> str:
    lines = ["node\tkind\tletter\tell\td"]
    for v in range(t.n):
        kind = "internal" if t.is_internal(v) else "leaf"
        lines.append(f"{v}\t{kind}\t{t.letter[v]}\t{ld.ell[v]}\t{ld.d[v]}")
    return "\n".join(lines) + "\n"
