"""Brute-force realizer search, used as ground truth for small trees.

Candidate strings are enumerated by length, then lexicographically, over the
letters found directly below the root.  A prefix is abandoned as soon as some
root subtree of its suffix tree has more leaves or internal nodes than the
matching subtree of the target: appending letters never removes a leaf or an
internal node, nor moves one to another root subtree.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

from .st_construct import _build_naive, _fill_suffix_links, to_annotated
from .tree_model import ROOT, TERMINATOR, AnnotatedTree, canonical_form

DEFAULT_CAP = 1_000_000
CAP_ENV = "SUFFICERE_ORACLE_CAP"


class BudgetExceeded(RuntimeError):
    code = "BUDGET_EXCEEDED"


@dataclass(frozen=True)
class OracleResult:
    ok: bool
    string: str | None = None
    steps: int = 0

    def __bool__(self) -> bool:
        return self.ok


def default_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    return int(raw) if raw else DEFAULT_CAP


def _signature(st) -> dict:
    """Leaf and internal-node counts below each root child of a suffix tree."""
    sig = {}
    for a, ch in st.children[ROOT].items():
        leaves = internal = 0
        stack = [ch]
        while stack:
            v = stack.pop()
            kids = st.children[v]
            if kids:
                internal += 1
                stack.extend(kids.values())
            else:
                leaves += 1
        sig[a] = (leaves, internal)
    return sig


def _tree_signature(t: AnnotatedTree) -> dict:
    sig = {}
    for ch in t.children[ROOT]:
        leaves = internal = 0
        stack = [ch]
        while stack:
            v = stack.pop()
            if t.children[v]:
                internal += 1
                stack.extend(t.children[v])
            else:
                leaves += 1
        sig[t.letter[ch]] = (leaves, internal)
    return sig


def _fits(sig: dict, bound: dict) -> bool:
    for a, (leaves, internal) in sig.items():
        b = bound.get(a)
        if b is None or leaves > b[0] or internal > b[1]:
            return False
    return True


def oracle_decide(t: AnnotatedTree, max_len: int | None = None, cap: int | None = None,
                  min_len: int = 0) -> OracleResult:
    """Length-lex smallest string of length in [min_len, max_len] whose suffix tree is ``t``.

    ``max_len`` defaults to ``t.n - 1``, which is enough for every suffix tree.
    Raises :class:`BudgetExceeded` after ``cap`` candidate strings.
    """
    if max_len is None:
        max_len = t.n - 1
    if cap is None:
        cap = default_cap()
    letters = sorted(t.letter[c] for c in t.children[ROOT])
    want = canonical_form(t)
    bound = _tree_signature(t)
    steps = 0

    # Breadth-first over prefixes: each level stays in lexicographic order.
    level = [""]
    for length in range(max_len + 1):
        survivors = []
        for s in level:
            steps += 1
            if steps > cap:
                raise BudgetExceeded(f"more than {cap} candidate strings")
            st = _build_naive(s)
            if s and not _fits(_signature(st), bound):
                continue
            if length >= min_len and st.n == t.n:
                _fill_suffix_links(st)
                if canonical_form(to_annotated(st)) == want:
                    return OracleResult(True, s, steps)
            survivors.append(s)
        if length == max_len:
            break
        # '$' sorts before the other letters and only ever closes a string
        level = [s + a for s in survivors if not s.endswith(TERMINATOR) for a in letters]
    return OracleResult(False, None, steps)


def minimal_realizer_length(t: AnnotatedTree, cap: int | None = None) -> int | None:
    r = oracle_decide(t, cap=cap)
    return len(r.string) if r.ok else None
