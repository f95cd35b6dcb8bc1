"""Deciding whether a tree is the suffix tree of a '$'-terminated string."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .st_construct import build_suffix_tree, to_annotated
from .stg import NoMatchingChildError, build_stg, compute_ld, euler_tour_string, is_eulerian
from .tree_model import ROOT, TERMINATOR, AnnotatedTree, canonical_equal, validate_preconditions


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decision.

    ``string`` is the realizing string when ``ok``; ``reason`` is a
    machine-readable code otherwise.
    """

    ok: bool
    reason: str | None = None
    string: str | None = None
    location: Any = None
    augmented: AnnotatedTree | None = None
    trace: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


def decide_dollar(t: AnnotatedTree, verify: bool = True) -> Verdict:
    """Return ``Verdict(ok=True, string=S + '$')`` if ``t`` is the $-suffix tree of ``S + '$'``."""
    report = validate_preconditions(t)
    if not report.ok:
        return Verdict(False, "PRECONDITION_" + report.first_rule())
    dollar_leaf = t.child(ROOT, TERMINATOR)
    if dollar_leaf is None or t.children[dollar_leaf]:
        return Verdict(False, "NO_DOLLAR_SHAPE")
    try:
        ld = compute_ld(t)
    except NoMatchingChildError:
        return Verdict(False, "PRECONDITION_P2")
    if min(ld.d) < 0:
        return Verdict(False, "NEGATIVE_D")
    g = build_stg(t, ld)
    if not is_eulerian(g):
        return Verdict(False, "NOT_EULERIAN")
    s = euler_tour_string(g)
    if s is None:
        return Verdict(False, "NO_EULER_CYCLE")
    if s.find(TERMINATOR) != len(s) - 1:
        return Verdict(False, "NO_EULER_CYCLE")
    if verify and not realizes_dollar(s, t):
        return Verdict(False, "VERIFY_FAILED")
    return Verdict(True, string=s)


def realizes_dollar(s: str, t: AnnotatedTree) -> bool:
    """True iff ``s`` ends with '$' and its suffix tree equals ``t``."""
    if not s.endswith(TERMINATOR):
        return False
    try:
        st = build_suffix_tree(s[:-1], dollar=True)
    except ValueError:
        return False
    return st.n == t.n and canonical_equal(to_annotated(st), t)
