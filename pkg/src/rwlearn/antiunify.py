"""Syntactic and depth-bounded least general generalization of term tuples.

A generalization run is parameterized by a GenStore: tuples of terms that
cannot be generalized structurally are replaced by a variable that depends
only on the tuple, so the same tuple always yields the same variable within
one run.  That coherence is what makes the result least general.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .terms import App, IOEquation, Term, Var, term_vars

INF = math.inf


class GenStore:
    """Tuple-indexed source of generalization variables for one run."""

    def __init__(self, fresh=None):
        self.entries: dict[tuple, str] = {}
        if fresh is None:
            counter = itertools.count()
            fresh = lambda: f"g{next(counter)}"
        self._fresh = fresh

    def var_for(self, ts: tuple) -> Var:
        name = self.entries.get(ts)
        if name is None:
            name = self._fresh()
            self.entries[ts] = name
        return Var(name)

    def witness(self, i: int) -> dict:
        """Substitution mapping each store variable back to the i-th input term."""
        return {name: ts[i] for ts, name in self.entries.items()}


def _heads_agree(ts: tuple) -> bool:
    t0 = ts[0]
    if isinstance(t0, Var):
        return all(t == t0 for t in ts)
    return all(
        isinstance(t, App) and t.head == t0.head and len(t.args) == len(t0.args)
        for t in ts
    )


def lgg_classic(ts, store: GenStore) -> Term:
    """Plotkin's least general generalization (no depth bound)."""
    ts = tuple(ts)
    if not ts:
        raise ValueError("lgg of an empty tuple")
    if not _heads_agree(ts):
        return store.var_for(ts)
    t0 = ts[0]
    if isinstance(t0, Var):
        return t0
    return App(t0.head, tuple(lgg_classic(args, store) for args in zip(*(t.args for t in ts))))


def lgg(ts, store: GenStore, depth=INF, _level: int = 1) -> Term:
    """Depth-bounded least general generalization.

    The root symbol sits at depth 1; a node is kept only when all heads agree
    and its depth is still below the bound, otherwise the tuple is generalized
    by a store variable.  depth=INF gives the classical lgg.
    """
    ts = tuple(ts)
    if not ts:
        raise ValueError("lgg of an empty tuple")
    if not (_heads_agree(ts) and _level < depth):
        return store.var_for(ts)
    t0 = ts[0]
    if isinstance(t0, Var):
        return t0
    return App(
        t0.head,
        tuple(lgg(args, store, depth, _level + 1) for args in zip(*(t.args for t in ts))),
    )


@dataclass(frozen=True)
class CandidateRule:
    lhs: App
    rhs: Term


def variable_condition(rule: CandidateRule) -> bool:
    """True iff every rhs variable occurs in some lhs argument."""
    lhs_vars = set()
    for a in rule.lhs.args:
        lhs_vars.update(term_vars(a))
    return set(term_vars(rule.rhs)) <= lhs_vars


def left_linear(rule: CandidateRule) -> bool:
    seen: list[str] = []
    for a in rule.lhs.args:
        seen.extend(term_vars(a))
    return len(seen) == len(set(seen))


def generalize_examples(fn: str, examples, depth=INF, fresh=None) -> CandidateRule | None:
    """Anti-unify the i/o equations of fn into a single candidate rule.

    Left-hand argument tuples and right-hand sides share one GenStore, so
    lhs/rhs correlations are preserved.  Arguments sit below the function
    symbol and are generalized from depth 2; the rhs from depth 1.  Returns
    None when the variable condition fails.
    """
    examples = list(examples)
    if not examples:
        raise ValueError("no examples to generalize")
    arity = len(examples[0].lhs_args)
    if any(len(ex.lhs_args) != arity or ex.fn != fn for ex in examples):
        raise ValueError("examples disagree on function or arity")
    store = GenStore(fresh)
    lhs_args = tuple(
        lgg(tuple(ex.lhs_args[i] for ex in examples), store, depth, _level=2)
        for i in range(arity)
    )
    rhs = lgg(tuple(ex.rhs for ex in examples), store, depth, _level=1)
    rule = CandidateRule(App(fn, lhs_args), rhs)
    return rule if variable_condition(rule) else None
