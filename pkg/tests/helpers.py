"""Shared builders, generators and oracles for the test suite."""

from __future__ import annotations

import itertools
import pathlib

from rwlearn import (
    App,
    ConstructorAlt,
    InduceConfig,
    IOEquation,
    SortEnv,
    Var,
    induce,
    match_pattern,
    parse_problem,
    subterms,
    renaming_match,
)

PROBLEMS = pathlib.Path(__file__).resolve().parent.parent / "problems"


def nat_env() -> SortEnv:
    return SortEnv({"nat": (ConstructorAlt("0"), ConstructorAlt("s", ("nat",)))})


def list_env() -> SortEnv:
    return SortEnv({
        "nat": (ConstructorAlt("0"), ConstructorAlt("s", ("nat",))),
        "list": (ConstructorAlt("nil"), ConstructorAlt("cons", ("nat", "list"))),
    })


def tree_env() -> SortEnv:
    return SortEnv({
        "nat": (ConstructorAlt("0"), ConstructorAlt("s", ("nat",))),
        "tree": (ConstructorAlt("nl"), ConstructorAlt("nd", ("tree", "nat", "tree"))),
    })


def nat(n: int):
    t = App("0")
    for _ in range(n):
        t = App("s", (t,))
    return t


def lst(*elems):
    t = App("nil")
    for e in reversed(elems):
        t = App("cons", (e, t))
    return t


def eq(fn, args, rhs) -> IOEquation:
    return IOEquation(fn, tuple(args), rhs)


def load_problem(name: str, **cfg):
    problem = parse_problem((PROBLEMS / name).read_text())
    if cfg:
        problem.config = InduceConfig(**cfg)
    return problem


def run_file(name: str, **cfg):
    """(problem, raw induce report) for a problem file, no simplification."""
    problem = load_problem(name, **cfg)
    report = induce(problem.target, problem.examples, problem.sort_env,
                    problem.signatures, problem.config)
    return problem, report


def random_term(env: SortEnv, sort: str, height: int, rng, var_pool=None):
    """A random well-sorted term; var_pool maps sort -> variable name list."""
    if var_pool and var_pool.get(sort) and rng.random() < 0.25:
        return Var(rng.choice(var_pool[sort]))
    alts = env.alternatives(sort)
    if height <= 1:
        alts = [a for a in alts if a.arity == 0]
    alt = rng.choice(list(alts))
    return App(alt.name,
               tuple(random_term(env, s, height - 1, rng, var_pool) for s in alt.arg_sorts))


def random_ground_subst(var_sorts: dict, env: SortEnv, rng, height: int = 3) -> dict:
    return {v: random_term(env, s, height, rng) for v, s in var_sorts.items()}


def common_generalizations(t1, t2) -> list:
    """Every common generalization of (t1, t2), in finest variable naming.

    Holes are keyed by the pair of subterms they stand for, so equal pairs
    share a variable; any coarser-named common generalization is more general
    than one produced here.
    """
    holes: dict = {}

    def hole(a, b) -> Var:
        return Var(holes.setdefault((a, b), f"h{len(holes)}"))

    def go(a, b) -> list:
        options = [hole(a, b)]
        if isinstance(a, Var) and a == b:
            options.append(a)
        elif (isinstance(a, App) and isinstance(b, App)
              and a.head == b.head and len(a.args) == len(b.args)):
            for combo in itertools.product(*(go(x, y) for x, y in zip(a.args, b.args))):
                options.append(App(a.head, combo))
        return options

    return go(t1, t2)


def is_common_generalization(g, t1, t2) -> bool:
    return match_pattern(g, t1) is not None and match_pattern(g, t2) is not None


def canonical_rules(rules, fixed_symbols) -> tuple:
    """Rules with variables and non-fixed function symbols renamed by first occurrence.

    Two learned systems are structurally equal modulo consistent renaming of
    fresh variables and auxiliary symbols iff their canonical forms coincide.
    """
    fixed = set(fixed_symbols)
    fn_map: dict = {}

    def canon(t, var_map):
        if isinstance(t, Var):
            return Var(var_map.setdefault(t.name, f"V{len(var_map)}"))
        head = t.head if t.head in fixed else fn_map.setdefault(t.head, f"F{len(fn_map)}")
        return App(head, tuple(canon(a, var_map) for a in t.args))

    out = []
    for r in rules:
        var_map: dict = {}  # variables are rule-scoped
        out.append((canon(r.lhs, var_map), canon(r.rhs, var_map)))
    return tuple(out)


def renamed_subterm_pool(examples) -> list:
    """All subterms of both sides of the given i/o equations."""
    pool = []
    for ex in examples:
        for side in (*ex.lhs_args, ex.rhs):
            pool.extend(subterms(side))
    return pool


def contained_up_to_renaming(t, pool) -> bool:
    return any(renaming_match(s, t) is not None for s in pool)


def int_to_blist(n: int):
    """Binary digit list, least significant digit outermost: 6 -> o(i(i(nl)))."""
    if n == 0:
        return App("nl")
    return App("i" if n & 1 else "o", (int_to_blist(n >> 1),))


def blist_add_examples(limit: int = 4) -> list:
    """Binary-addition i/o equations for all argument pairs below limit."""
    return [
        eq("badd", (int_to_blist(m), int_to_blist(n)), int_to_blist(m + n))
        for m in range(limit)
        for n in range(limit)
    ]
