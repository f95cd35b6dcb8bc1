"""Test corpora: exhaustive small strings and perturbed trees."""
from __future__ import annotations

import itertools
import random

from .st_construct import build_suffix_tree, to_annotated
from .tree_model import ROOT, AnnotatedTree, TreeFormatError


def all_strings(alphabet: str, max_len: int):
    for m in range(max_len + 1):
        for w in itertools.product(alphabet, repeat=m):
            yield "".join(w)


def standard_strings():
    """Strings over {a,b} up to length 10 and over {a,b,c} up to length 7."""
    yield from all_strings("ab", 10)
    yield from all_strings("abc", 7)


def distinct_trees(strings, dollar: bool = False, max_nodes: int | None = None):
    """``(string, tree)`` pairs, one per distinct annotated tree."""
    seen = set()
    for s in strings:
        t = to_annotated(build_suffix_tree(s, dollar=dollar))
        if max_nodes is not None and t.n > max_nodes:
            continue
        if t in seen:
            continue
        seen.add(t)
        yield s, t


def _rebuild(t: AnnotatedTree, parent, letter, slink) -> AnnotatedTree | None:
    edges = [(parent[v], v, letter[v]) for v in range(1, t.n)]
    links = [(v, w) for v, w in enumerate(slink) if v != ROOT and w is not None]
    try:
        return AnnotatedTree.from_edges(t.n, edges, links)
    except (TreeFormatError, ValueError):
        return None


def retarget_slink(t: AnnotatedTree, rng: random.Random) -> AnnotatedTree | None:
    internal = [v for v in t.internal_nodes() if v != ROOT]
    if not internal:
        return None
    v = rng.choice(internal)
    slink = list(t.slink)
    choices = [w for w in t.internal_nodes() if w != t.slink[v] and w != v]
    if not choices:
        return None
    slink[v] = rng.choice(choices)
    return _rebuild(t, t.parent, t.letter, slink)


def swap_letters(t: AnnotatedTree, rng: random.Random) -> AnnotatedTree | None:
    """Exchange the first letters of two sibling edges, or relabel one edge."""
    internal = [v for v in t.internal_nodes() if t.children[v]]
    if not internal:
        return None
    v = rng.choice(internal)
    kids = list(t.children[v])
    letter = list(t.letter)
    alphabet = sorted({t.letter[c] for c in t.children[ROOT]})
    if len(kids) >= 2 and rng.random() < 0.5:
        x, y = rng.sample(kids, 2)
        letter[x], letter[y] = letter[y], letter[x]
    else:
        x = rng.choice(kids)
        used = {t.letter[c] for c in kids}
        free = [a for a in alphabet if a not in used]
        if not free:
            return None
        letter[x] = rng.choice(free)
    return _rebuild(t, t.parent, letter, t.slink)


def move_leaf(t: AnnotatedTree, rng: random.Random) -> AnnotatedTree | None:
    """Hang one leaf under a different internal node, keeping sibling letters distinct."""
    leaves = [v for v in t.leaves() if len(t.children[t.parent[v]]) > 2 or t.parent[v] == ROOT]
    if not leaves:
        return None
    y = rng.choice(leaves)
    targets = [
        w for w in t.internal_nodes()
        if w != t.parent[y] and all(t.letter[c] != t.letter[y] for c in t.children[w])
    ]
    if not targets:
        return None
    parent = list(t.parent)
    parent[y] = rng.choice(targets)
    return _rebuild(t, parent, t.letter, t.slink)


MUTATIONS = (retarget_slink, swap_letters, move_leaf)


def mutated_trees(base: list[AnnotatedTree], count: int, seed: int = 0, exclude=()):
    """``count`` distinct well-formed trees obtained by one random mutation each.

    Trees equal to anything in ``exclude`` (typically the suffix-tree corpus)
    are skipped, so most results are not suffix trees.
    """
    rng = random.Random(seed)
    seen = set(exclude)
    out = []
    attempts = 0
    while len(out) < count and attempts < 200 * count:
        attempts += 1
        t = rng.choice(base)
        m = rng.choice(MUTATIONS)
        u = m(t, rng)
        if u is None or u in seen:
            continue
        seen.add(u)
        out.append(u)
    return out
