"""Bounded innermost evaluation of rewrite systems and the coverage test.

A rewrite system is an ordered list of rules over a set of function
signatures.  Evaluation rewrites the leftmost-innermost redex with the first
matching rule, so it is a deterministic function of (system, term, limit).
"""

from __future__ import annotations

from dataclasses import dataclass

from .terms import App, IOEquation, Signature, Term, Var, match_pattern, render_term, substitute, term_vars


class EvalError(Exception):
    pass


class StepLimitExceeded(EvalError):
    def __init__(self, limit: int):
        super().__init__(f"no normal form within {limit} rewrite steps")
        self.limit = limit


class StuckTerm(EvalError):
    def __init__(self, term: Term):
        super().__init__(f"no rule applies to {render_term(term)}")
        self.term = term


class RuleError(ValueError):
    pass


@dataclass(frozen=True)
class Rule:
    lhs: App
    rhs: Term

    def render(self) -> str:
        return f"{render_term(self.lhs)}={render_term(self.rhs)}"


class RewriteSystem:
    """Immutable ordered rule list plus the signatures of all defined symbols.

    Admission checks: the lhs head must be a declared function, lhs arguments
    must be constructor/variable patterns that are left-linear, and every rhs
    variable must occur on the lhs.
    """

    def __init__(self, rules, signatures):
        self.signatures = tuple(signatures)
        self.sig_by_name = {s.name: s for s in self.signatures}
        self.rules = tuple(rules)
        self._by_head: dict[str, list[Rule]] = {}
        for rule in self.rules:
            self._admit(rule)
            self._by_head.setdefault(rule.lhs.head, []).append(rule)

    def _admit(self, rule: Rule):
        if rule.lhs.head not in self.sig_by_name:
            raise RuleError(f"lhs head {rule.lhs.head} has no signature")
        seen: list[str] = []
        for a in rule.lhs.args:
            for sub in _apps(a):
                if sub.head in self.sig_by_name:
                    raise RuleError(f"defined symbol {sub.head} inside lhs pattern")
            seen.extend(term_vars(a))
        if len(seen) != len(set(seen)):
            raise RuleError(f"non-left-linear pattern in {rule.render()}")
        if not set(term_vars(rule.rhs)) <= set(seen):
            raise RuleError(f"unbound rhs variable in {rule.render()}")

    def is_defined(self, name: str) -> bool:
        return name in self.sig_by_name

    def rules_for(self, name: str):
        return self._by_head.get(name, ())


def _apps(t: Term):
    if isinstance(t, App):
        yield t
        for a in t.args:
            yield from _apps(a)


def _rewrite_innermost(sys: RewriteSystem, t: Term):
    """One leftmost-innermost step; returns the new term or None when t is normal.

    Raises StuckTerm when an innermost defined-symbol subterm matches no rule
    (its arguments are already normal, so it can never become reducible).
    """
    if isinstance(t, Var):
        return None
    for i, a in enumerate(t.args):
        new = _rewrite_innermost(sys, a)
        if new is not None:
            return App(t.head, t.args[:i] + (new,) + t.args[i + 1:])
    if sys.is_defined(t.head):
        for rule in sys.rules_for(t.head):
            binding = match_pattern(rule.lhs, t)
            if binding is not None:
                return substitute(rule.rhs, binding)
        raise StuckTerm(t)
    return None


def evaluate_steps(sys: RewriteSystem, t: Term, step_limit: int = 10000):
    """Normal form of t together with the number of rewrite steps taken."""
    steps = 0
    while True:
        new = _rewrite_innermost(sys, t)
        if new is None:
            return t, steps
        steps += 1
        if steps > step_limit:
            raise StepLimitExceeded(step_limit)
        t = new


def evaluate(sys: RewriteSystem, t: Term, step_limit: int = 10000) -> Term:
    """Innermost-leftmost normal form; free variables are rigid atoms."""
    return evaluate_steps(sys, t, step_limit)[0]


def covers(sys: RewriteSystem, ex: IOEquation, step_limit: int = 10000) -> bool:
    """Whether evaluating the example lhs yields its rhs.

    Example variables are frozen as rigid atoms; evaluation failure (stuck
    subterm or step limit) counts as not covered, never as an exception.
    """
    try:
        return evaluate(sys, ex.lhs, step_limit) == ex.rhs
    except EvalError:
        return False


def covers_all(sys: RewriteSystem, examples, step_limit: int = 10000):
    """(all covered?, list of uncovered examples)."""
    uncovered = [ex for ex in examples if not covers(sys, ex, step_limit)]
    return not uncovered, uncovered
