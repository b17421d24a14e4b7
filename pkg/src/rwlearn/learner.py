"""Recursive synthesis of structurally recursive rewrite definitions.

For a target function and a chosen argument position, the examples are split
per constructor of that position's sort.  Each subset is first anti-unified;
when the resulting candidate is not executable and the constructor has
recursive arguments, a structural recursion scheme introduces a fresh
auxiliary function whose i/o equations are derived from the target's, and the
auxiliary is learned recursively.  A position succeeds when the assembled
system covers every given example.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .antiunify import INF, CandidateRule, generalize_examples, left_linear
from .rewrite import RewriteSystem, Rule, covers_all
from .terms import (
    App,
    ConstructorAlt,
    IOEquation,
    Signature,
    SortEnv,
    Term,
    Var,
    classify_args,
    match_pattern,
    render_term,
    renaming_match,
    substitute,
    term_vars,
)


class FreshNames:
    """Single monotone counter for fresh variable and function names.

    Generated names (v<N>, f<N>) skip anything in the reserved set, so they
    never collide with user symbols or variables.
    """

    def __init__(self, reserved=()):
        self.reserved = set(reserved)
        self._n = 0

    def _next(self, prefix: str) -> str:
        while True:
            self._n += 1
            name = f"{prefix}{self._n}"
            if name not in self.reserved:
                self.reserved.add(name)
                return name

    def var(self) -> str:
        return self._next("v")

    def fn(self) -> str:
        return self._next("f")


@dataclass
class InduceConfig:
    depth: float = INF
    max_aux_functions: int = 50
    max_recursion_depth: int = 10
    step_limit: int = 10000
    try_whole_set_lgg_first: bool = False

    def __post_init__(self):
        if self.depth != INF:
            self.depth = int(self.depth)
            if self.depth < 1:
                raise ValueError("depth must be >= 1 or INF")
        for cap in (self.max_aux_functions, self.max_recursion_depth, self.step_limit):
            if cap <= 0:
                raise ValueError("caps must be positive")


@dataclass(frozen=True)
class SchemeEquation:
    """f(x.., c(y..), x..) = g(other xs, non-recursive ys, recursive f-calls)."""

    target: str
    position: int
    alt: ConstructorAlt
    lhs: App
    aux_name: str
    rhs: App
    aux_sig: Signature


@dataclass(frozen=True)
class TraceEvent:
    level: int
    kind: str
    text: str


@dataclass(frozen=True)
class UnderivableExample:
    aux_name: str
    layer: int
    member: IOEquation
    call: Term


@dataclass
class PositionAttempt:
    fn: str
    position: int
    candidate: RewriteSystem
    uncovered: list
    abandoned: bool


@dataclass
class FailureInfo:
    reason: str
    underivable: list
    uncovered: list


@dataclass
class InduceReport:
    target: str
    success: bool
    system: RewriteSystem | None
    aux_signatures: list
    trace: list
    failure: FailureInfo | None
    derived_aux: list = field(default_factory=list)
    attempts: list = field(default_factory=list)
    warnings: list = field(default_factory=list)


def split_by_constructor(examples, position: int, alt: ConstructorAlt) -> list:
    """Examples whose lhs argument at position (0-based) is headed by alt.

    A variable at that position matches no constructor.
    """
    return [
        ex
        for ex in examples
        if isinstance(ex.lhs_args[position], App) and ex.lhs_args[position].head == alt.name
    ]


def build_scheme(env: SortEnv, sig: Signature, position: int, alt: ConstructorAlt,
                 fresh: FreshNames) -> SchemeEquation:
    """Structural recursion scheme for sig at the given argument position and constructor.

    The auxiliary's arguments are: the remaining target arguments in original
    order, the non-recursive constructor arguments in constructor order, then
    one recursive target call per recursive constructor argument.
    """
    sort = sig.domain[position]
    rec, nonrec = classify_args(env, sort, alt)
    if not rec:
        raise ValueError(f"{alt.name} has no recursive argument")
    xs = [Var(fresh.var()) for _ in range(sig.arity - 1)]
    ys = [Var(fresh.var()) for _ in range(alt.arity)]
    aux_name = fresh.fn()

    lhs_args = list(xs)
    lhs_args.insert(position, App(alt.name, tuple(ys)))
    lhs = App(sig.name, tuple(lhs_args))

    def target_call(arg: Term) -> App:
        call_args = list(xs)
        call_args.insert(position, arg)
        return App(sig.name, tuple(call_args))

    rhs_args = list(xs) + [ys[j] for j in nonrec] + [target_call(ys[j]) for j in rec]
    other_sorts = [s for i, s in enumerate(sig.domain) if i != position]
    aux_domain = tuple(other_sorts + [alt.arg_sorts[j] for j in nonrec] + [sig.range] * len(rec))
    aux_sig = Signature(aux_name, aux_domain, sig.range)
    return SchemeEquation(sig.name, position, alt, lhs, aux_name,
                          App(aux_name, tuple(rhs_args)), aux_sig)


def derive_aux_examples(scheme: SchemeEquation, all_examples, subset):
    """Join the scheme with the matching examples to get auxiliary i/o equations.

    Each recursive target call is resolved against the lhs of some given
    example via a renaming substitution; its rhs, renamed accordingly, stands
    in for the call.  Members with an unresolvable call are returned as
    underivable.  Returns (aux examples, underivable members, warnings),
    where aux examples carry the originating member and the built call.
    """
    derived = []
    underivable = []
    warnings = []
    for member in subset:
        binding = match_pattern(scheme.lhs, member.lhs)
        if binding is None:
            raise ValueError("subset member does not match the scheme lhs")
        args = []
        stuck_call = None
        for arg in scheme.rhs.args:
            if isinstance(arg, App) and arg.head == scheme.target:
                call = substitute(arg, binding)
                value, warn = _resolve_call(call, all_examples)
                if warn:
                    warnings.append(warn)
                if value is None:
                    stuck_call = call
                    break
                args.append(value)
            else:
                args.append(substitute(arg, binding))
        if stuck_call is not None:
            underivable.append((member, stuck_call))
            continue
        derived.append((IOEquation(scheme.aux_name, tuple(args), member.rhs), member))
    return derived, underivable, warnings


def _resolve_call(call: App, examples):
    """First example whose lhs renames onto the call; warns when ambiguous."""
    resolutions = []
    for ex in examples:
        sigma = renaming_match(ex.lhs, call)
        if sigma is not None:
            resolutions.append(substitute(ex.rhs, sigma))
    if not resolutions:
        return None, None
    warn = None
    if any(r != resolutions[0] for r in resolutions[1:]):
        warn = (f"ambiguous lookup for {render_term(call)}: "
                f"{', '.join(render_term(r) for r in resolutions)}; taking the first")
    return resolutions[0], warn


def _canonical_example_set(examples) -> frozenset:
    """Example multiset up to variable renaming and head-symbol renaming.

    Equations are keyed by their shape with the top function symbol erased;
    variables are renamed by first occurrence while scanning equations in
    sorted skeleton order, so renamed sets compare equal.
    """

    def skeleton(ex: IOEquation) -> str:
        def blind(t: Term) -> str:
            if isinstance(t, Var):
                return "_"
            return f"{t.head}({','.join(blind(a) for a in t.args)})"

        return f"{','.join(blind(a) for a in ex.lhs_args)}={blind(ex.rhs)}"

    ordered = sorted(examples, key=skeleton)
    renaming: dict[str, str] = {}

    def canon(t: Term) -> Term:
        if isinstance(t, Var):
            name = renaming.setdefault(t.name, f"_{len(renaming)}")
            return Var(name)
        return App(t.head, tuple(canon(a) for a in t.args))

    keyed = [
        (tuple(canon(a) for a in ex.lhs_args), canon(ex.rhs))
        for ex in ordered
    ]
    counted: dict = {}
    for item in keyed:
        counted[item] = counted.get(item, 0) + 1
    return frozenset(counted.items())


def detect_repetition(history, current) -> bool:
    """True iff the current example set equals an ancestor's, up to renaming."""
    if not history:
        return False
    key = _canonical_example_set(current)
    return key in history


class _Ctx:
    def __init__(self, env, cfg, fresh):
        self.env = env
        self.cfg = cfg
        self.fresh = fresh
        self.trace: list[TraceEvent] = []
        self.derived_aux: list = []
        self.underivable: list = []
        self.attempts: list = []
        self.warnings: list = []
        self.aux_count = 0

    def emit(self, level, kind, text):
        self.trace.append(TraceEvent(level, kind, text))


def induce(target: str, examples, env: SortEnv, sigs, cfg: InduceConfig | None = None,
           fresh: FreshNames | None = None) -> InduceReport:
    """Learn a rewrite system for target that covers all given i/o equations.

    Failure is a value: the report carries the diagnostics (underivable
    auxiliary examples, uncovered examples per attempted position) instead of
    raising.
    """
    cfg = cfg if cfg is not None else InduceConfig()
    examples = list(examples)
    if not examples:
        raise ValueError("no examples given")
    sig_map = {s.name: s for s in sigs}
    if target not in sig_map:
        raise ValueError(f"no signature for {target}")
    if fresh is None:
        reserved = set(sig_map) | env.symbols()
        for ex in examples:
            reserved.update(term_vars(ex.lhs))
            reserved.update(term_vars(ex.rhs))
        fresh = FreshNames(reserved)
    ctx = _Ctx(env, cfg, fresh)
    ok, rules, aux_sigs, reason = _induce(ctx, target, examples, sig_map, layer=0,
                                          history=frozenset(), level=0)
    if ok:
        system = RewriteSystem(rules, list(aux_sigs) + [sig_map[target]])
        covered, uncovered = covers_all(system, examples, cfg.step_limit)
        assert covered, "internal error: success without coverage"
        failure = None
    else:
        system = None
        if reason is None:
            reason = "underivable-aux-examples" if ctx.underivable else "uncovered-examples"
        last_uncovered = ctx.attempts[-1].uncovered if ctx.attempts else list(examples)
        failure = FailureInfo(reason, list(ctx.underivable), last_uncovered)
    return InduceReport(
        target=target,
        success=ok,
        system=system,
        aux_signatures=list(aux_sigs),
        trace=ctx.trace,
        failure=failure,
        derived_aux=list(ctx.derived_aux),
        attempts=list(ctx.attempts),
        warnings=list(ctx.warnings),
    )


def _render_eqs(examples) -> str:
    return "[" + ",".join(ex.render() for ex in examples) + "]"


def _adoptable(cand: CandidateRule | None) -> bool:
    return cand is not None and left_linear(cand)


def _induce(ctx: _Ctx, fn: str, examples, sig_map, layer, history, level):
    """Returns (ok, rules, aux signatures, failure reason or None)."""
    cfg = ctx.cfg
    ctx.emit(level, "induce", f"induce({fn})")
    if layer > cfg.max_recursion_depth:
        ctx.emit(level + 1, "cap", f"recursion depth cap {cfg.max_recursion_depth} exceeded")
        ctx.emit(level, "induce-end", f"induce({fn})")
        return False, [], [], "cap-exceeded"
    if detect_repetition(history, examples):
        ctx.emit(level + 1, "repetition", "repeated example set, aborting branch")
        ctx.emit(level, "induce-end", f"induce({fn})")
        return False, [], [], "repetition"
    history = history | {_canonical_example_set(examples)}
    sig = sig_map[fn]

    if cfg.try_whole_set_lgg_first:
        cand = generalize_examples(fn, examples, cfg.depth, ctx.fresh.var)
        if _adoptable(cand):
            rule = Rule(cand.lhs, cand.rhs)
            candidate = RewriteSystem([rule], sig_map.values())
            ok, _ = covers_all(candidate, examples, cfg.step_limit)
            if ok:
                ctx.emit(level + 1, "anti-unifier", f"anti-unifier: {rule.render()}")
                ctx.emit(level + 1, "covered", "all examples covered")
                ctx.emit(level, "induce-end", f"induce({fn})")
                return True, [rule], [], None

    for position in range(sig.arity):
        ctx.emit(level + 1, "trying-position", f"trying argument position: {position + 1}")
        rules: list[Rule] = []
        aux_rules: list[Rule] = []
        aux_sigs: list[Signature] = []
        abandoned = False
        for alt in ctx.env.alternatives(sig.domain[position]):
            label = f"inducePos({fn},{position + 1},{alt.render()})"
            ctx.emit(level + 1, "inducePos", label)
            subset = split_by_constructor(examples, position, alt)
            ctx.emit(level + 2, "matching-examples", f"matching examples: {_render_eqs(subset)}")
            if not subset:
                ctx.emit(level + 2, "no-examples", "no examples")
                ctx.emit(level + 1, "inducePos-end", label)
                continue
            cand = generalize_examples(fn, subset, cfg.depth, ctx.fresh.var)
            if _adoptable(cand):
                rule = Rule(cand.lhs, cand.rhs)
                ctx.emit(level + 2, "anti-unifier", f"anti-unifier: {rule.render()}")
                rules.append(rule)
                ctx.emit(level + 1, "inducePos-end", label)
                continue
            rec, _ = classify_args(ctx.env, sig.domain[position], alt)
            if not rec:
                abandoned = True
                ctx.emit(level + 1, "inducePos-end", label)
                break
            if ctx.aux_count >= cfg.max_aux_functions:
                ctx.emit(level + 2, "cap", f"auxiliary function cap {cfg.max_aux_functions} exceeded")
                abandoned = True
                ctx.emit(level + 1, "inducePos-end", label)
                break
            scheme = build_scheme(ctx.env, sig, position, alt, ctx.fresh)
            ctx.aux_count += 1
            ctx.emit(level + 2, "new-scheme",
                     f"new recursion scheme: {render_term(scheme.lhs)} = {render_term(scheme.rhs)}")
            derived, underivable, warnings = derive_aux_examples(scheme, examples, subset)
            ctx.warnings.extend(warnings)
            for aux_eq, member in derived:
                ctx.emit(level + 2, "derive",
                         f"derive new equation: {render_term(member.rhs)} = "
                         f"{render_term(member.lhs)} = {render_term(aux_eq.lhs)}")
                ctx.derived_aux.append((scheme.aux_name, layer + 1, aux_eq))
            for member, call in underivable:
                ctx.emit(level + 2, "underivable",
                         f"underivable equation: {member.render()} needs {render_term(call)}")
                ctx.underivable.append(
                    UnderivableExample(scheme.aux_name, layer + 1, member, call))
            if not derived:
                abandoned = True
                ctx.emit(level + 1, "inducePos-end", label)
                break
            sub_sigs = dict(sig_map)
            sub_sigs[scheme.aux_name] = scheme.aux_sig
            sub_ok, sub_rules, sub_aux, _ = _induce(
                ctx, scheme.aux_name, [eq for eq, _ in derived], sub_sigs,
                layer + 1, history, level + 2)
            if sub_ok:
                rules.append(Rule(scheme.lhs, scheme.rhs))
                aux_rules.extend(sub_rules)
                aux_sigs.append(scheme.aux_sig)
                aux_sigs.extend(sub_aux)
                ctx.emit(level + 1, "inducePos-end", label)
                continue
            abandoned = True
            ctx.emit(level + 1, "inducePos-end", label)
            break
        candidate = RewriteSystem(rules + aux_rules, list(sig_map.values()) + aux_sigs)
        ok, uncovered = covers_all(candidate, examples, cfg.step_limit)
        ctx.attempts.append(PositionAttempt(fn, position, candidate, uncovered, abandoned))
        if ok and not abandoned:
            ctx.emit(level + 1, "covered", "all examples covered")
            ctx.emit(level, "induce-end", f"induce({fn})")
            return True, rules + aux_rules, aux_sigs, None
        ctx.emit(level + 1, "uncovered", f"uncovered examples: {_render_eqs(uncovered)}")
    ctx.emit(level, "induce-end", f"induce({fn})")
    return False, [], [], None
