"""Sorted first-order terms, sort/signature environments, substitution and matching.

Terms are either variables or applications of a symbol to argument terms.
The same representation is used for i/o equation sides, rule patterns and
rule right-hand sides.  All values here are immutable; every operation is a
pure function.
"""

from __future__ import annotations

from dataclasses import dataclass


class TermError(Exception):
    """Base class for all sort/arity/symbol errors raised by this module."""


class UnknownSymbol(TermError):
    pass


class ArityMismatch(TermError):
    pass


class SortMismatch(TermError):
    pass


class SortConflict(TermError):
    def __init__(self, var: str, sort1: str, sort2: str):
        super().__init__(f"variable {var} used both as {sort1} and as {sort2}")
        self.var = var
        self.sort1 = sort1
        self.sort2 = sort2


class InvalidSortEnv(TermError):
    pass


@dataclass(frozen=True)
class Var:
    name: str

    def __repr__(self):
        return f"Var({self.name!r})"


@dataclass(frozen=True)
class App:
    head: str
    args: tuple = ()

    def __repr__(self):
        return f"App({self.head!r}, {self.args!r})" if self.args else f"App({self.head!r})"


Term = Var | App

# A substitution is a finite map from variable name to Term.  Variables
# outside the map are fixed points.
Substitution = dict


def term_vars(t: Term) -> list[str]:
    """Variable names occurring in t, in first-occurrence order."""
    seen: dict[str, None] = {}

    def walk(u: Term):
        if isinstance(u, Var):
            seen.setdefault(u.name)
        else:
            for a in u.args:
                walk(a)

    walk(t)
    return list(seen)


def subterms(t: Term):
    """All subterms of t (including t itself), pre-order."""
    yield t
    if isinstance(t, App):
        for a in t.args:
            yield from subterms(a)


def is_ground(t: Term) -> bool:
    return not term_vars(t)


def substitute(t: Term, subst: Substitution) -> Term:
    if isinstance(t, Var):
        return subst.get(t.name, t)
    if not t.args:
        return t
    return App(t.head, tuple(substitute(a, subst) for a in t.args))


def match_pattern(pattern: Term, subject: Term) -> Substitution | None:
    """The unique minimal substitution sigma with substitute(pattern, sigma) == subject.

    Subject variables are rigid atoms: they are matched only by an identical
    variable or by a pattern variable.  Returns None if no match exists.
    """
    binding: Substitution = {}

    def walk(p: Term, s: Term) -> bool:
        if isinstance(p, Var):
            bound = binding.get(p.name)
            if bound is None:
                binding[p.name] = s
                return True
            return bound == s
        if isinstance(s, Var):
            return False
        if p.head != s.head or len(p.args) != len(s.args):
            return False
        return all(walk(a, b) for a, b in zip(p.args, s.args))

    return binding if walk(pattern, subject) else None


def renaming_match(t1: Term, t2: Term) -> Substitution | None:
    """An injective variable-to-variable map sigma with substitute(t1, sigma) == t2."""
    fwd: Substitution = {}
    used_images: set[str] = set()

    def walk(a: Term, b: Term) -> bool:
        if isinstance(a, Var):
            if not isinstance(b, Var):
                return False
            bound = fwd.get(a.name)
            if bound is None:
                if b.name in used_images:
                    return False
                fwd[a.name] = b
                used_images.add(b.name)
                return True
            return bound == b
        if isinstance(b, Var):
            return False
        if a.head != b.head or len(a.args) != len(b.args):
            return False
        return all(walk(x, y) for x, y in zip(a.args, b.args))

    return fwd if walk(t1, t2) else None


def is_renaming(subst: Substitution) -> bool:
    images = [v for v in subst.values()]
    return all(isinstance(v, Var) for v in images) and len({v.name for v in images}) == len(images)


def render_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if not t.args:
        return t.head
    return f"{t.head}({','.join(render_term(a) for a in t.args)})"


@dataclass(frozen=True)
class ConstructorAlt:
    name: str
    arg_sorts: tuple = ()

    @property
    def arity(self) -> int:
        return len(self.arg_sorts)

    def render(self) -> str:
        if not self.arg_sorts:
            return self.name
        return f"{self.name}({','.join(self.arg_sorts)})"


@dataclass(frozen=True)
class Signature:
    name: str
    domain: tuple
    range: str

    @property
    def arity(self) -> int:
        return len(self.domain)


class SortEnv:
    """Named sorts, each given by an ordered list of constructor alternatives.

    Validated on construction: referenced sorts must be declared, constructor
    names must be globally unique, and every sort must be inhabited by at
    least one ground constructor term.
    """

    def __init__(self, sorts: dict):
        self.sorts = {name: tuple(alts) for name, alts in sorts.items()}
        self._ctor_home: dict[str, tuple] = {}
        for sort, alts in self.sorts.items():
            for alt in alts:
                if alt.name in self._ctor_home:
                    raise InvalidSortEnv(f"constructor {alt.name} declared twice")
                self._ctor_home[alt.name] = (sort, alt)
                for arg in alt.arg_sorts:
                    if arg not in self.sorts:
                        raise InvalidSortEnv(f"sort {arg} used by {alt.name} is not declared")
        self._check_inhabited()

    def _check_inhabited(self):
        inhabited: set[str] = set()
        changed = True
        while changed:
            changed = False
            for sort, alts in self.sorts.items():
                if sort in inhabited:
                    continue
                if any(all(a in inhabited for a in alt.arg_sorts) for alt in alts):
                    inhabited.add(sort)
                    changed = True
        empty = set(self.sorts) - inhabited
        if empty:
            raise InvalidSortEnv(f"uninhabited sorts: {sorted(empty)}")

    def alternatives(self, sort: str) -> tuple:
        if sort not in self.sorts:
            raise UnknownSymbol(f"sort {sort} is not declared")
        return self.sorts[sort]

    def is_constructor(self, name: str) -> bool:
        return name in self._ctor_home

    def constructor_home(self, name: str) -> tuple:
        """(owning sort, alternative) of a constructor."""
        if name not in self._ctor_home:
            raise UnknownSymbol(f"{name} is not a constructor")
        return self._ctor_home[name]

    def symbols(self) -> set[str]:
        return set(self.sorts) | set(self._ctor_home)


def classify_args(env: SortEnv, sort: str, alt: ConstructorAlt) -> tuple:
    """Split alt's argument positions (0-based) into (recursive, non-recursive).

    A position is recursive when its argument sort is the owning sort itself;
    both result tuples preserve argument order.
    """
    rec = tuple(j for j, s in enumerate(alt.arg_sorts) if s == sort)
    nonrec = tuple(j for j, s in enumerate(alt.arg_sorts) if s != sort)
    return rec, nonrec


@dataclass(frozen=True)
class IOEquation:
    fn: str
    lhs_args: tuple
    rhs: Term

    @property
    def lhs(self) -> App:
        return App(self.fn, self.lhs_args)

    def render(self) -> str:
        return f"{render_term(self.lhs)}={render_term(self.rhs)}"


def infer_variable_sorts(examples, env: SortEnv, sig: Signature) -> dict:
    """Map each example variable to the sort demanded by every position it occupies.

    Raises SortConflict when two occurrences demand different sorts,
    UnknownSymbol / ArityMismatch for malformed terms.  The result is
    independent of the order of the example list.
    """
    var_sorts: dict[str, str] = {}

    def demand(t: Term, sort: str):
        if isinstance(t, Var):
            prev = var_sorts.get(t.name)
            if prev is None:
                var_sorts[t.name] = sort
            elif prev != sort:
                raise SortConflict(t.name, prev, sort)
            return
        if not env.is_constructor(t.head):
            raise UnknownSymbol(f"{t.head} is not a constructor")
        home_sort, alt = env.constructor_home(t.head)
        if home_sort != sort:
            raise SortMismatch(f"{t.head} builds {home_sort}, expected {sort}")
        if len(t.args) != alt.arity:
            raise ArityMismatch(f"{t.head} expects {alt.arity} arguments, got {len(t.args)}")
        for a, s in zip(t.args, alt.arg_sorts):
            demand(a, s)

    for ex in examples:
        if ex.fn != sig.name:
            raise UnknownSymbol(f"example for {ex.fn}, expected {sig.name}")
        if len(ex.lhs_args) != sig.arity:
            raise ArityMismatch(f"{sig.name} expects {sig.arity} arguments, got {len(ex.lhs_args)}")
        for a, s in zip(ex.lhs_args, sig.domain):
            demand(a, s)
        demand(ex.rhs, sig.range)
    return var_sorts


def check_wellsorted(t: Term, expected: str, env: SortEnv, sigs: dict, var_sorts: dict):
    """Confirm t inhabits the expected sort under declared arities and variable sorts."""
    if isinstance(t, Var):
        sort = var_sorts.get(t.name)
        if sort is None:
            raise UnknownSymbol(f"variable {t.name} has no declared sort")
        if sort != expected:
            raise SortMismatch(f"variable {t.name} is {sort}, expected {expected}")
        return
    if env.is_constructor(t.head):
        home_sort, alt = env.constructor_home(t.head)
        domain, range_ = alt.arg_sorts, home_sort
    elif t.head in sigs:
        sig = sigs[t.head]
        domain, range_ = sig.domain, sig.range
    else:
        raise UnknownSymbol(f"unknown symbol {t.head}")
    if range_ != expected:
        raise SortMismatch(f"{t.head} builds {range_}, expected {expected}")
    if len(t.args) != len(domain):
        raise ArityMismatch(f"{t.head} expects {len(domain)} arguments, got {len(t.args)}")
    for a, s in zip(t.args, domain):
        check_wellsorted(a, s, env, sigs, var_sorts)
