"""Brute-force semantic oracle over finite standard models.

Values are plain Python data: sort `a` is the integers 1..domain_size,
Bool is bool, and datatype values are tagged tuples ("cons", x, xs). The
oracle evaluates terms call-by-value through the problem's recursive
definitions (guarded by a step fuse), evaluates formulas with quantifiers
ranging over size-bounded value enumerations, and provides two checks:

- exhaustive_check: does a formula hold in the standard model (leq is the
  numeric order)? Returns None or the first counterexample in a fixed
  deterministic enumeration order (binders outermost-first, elements
  ascending, lists by length then lexicographically).

- check_inference_soundness: is one inference step semantically sound?
  Every interpretation of the step's uninterpreted symbols (over the finite
  standard datatypes, with leq an arbitrary relation) that validates the
  premises must validate the conclusions, choosing witness values for
  symbols the step introduced fresh. Structural and computation induction
  over the bounded domains is valid in every such interpretation, so sound
  induction steps pass and corrupted ones are reported.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .clauses import Clause, Literal
from .errors import (
    FuseExhausted, MissingCase, NotGround, OracleBudget, UnknownSymbol,
)
from .formulas import (
    And, Atom, Eq, Exists, FalseF, Forall, Formula, Iff, Implies, Not, Or,
    TrueF, free_vars,
)
from .problem import Problem
from .terms import BOOL, App, Sort, Term, Var

__all__ = [
    "Oracle", "Counterexample", "show_value", "check_inference_soundness",
]


def show_value(v) -> str:
    """Human-readable rendering of an oracle value."""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, tuple):
        tag = v[0]
        if tag == "nil":
            return "[]"
        if tag == "cons":
            items = []
            while isinstance(v, tuple) and v[0] == "cons":
                items.append(show_value(v[1]))
                v = v[2]
            return "[" + ", ".join(items) + "]"
        if tag == "zero":
            return "0"
        if tag == "succ":
            n = 0
            while isinstance(v, tuple) and v[0] == "succ":
                n += 1
                v = v[1]
            return str(n)
        if len(v) == 1:
            return tag
        return f"{tag}({', '.join(show_value(a) for a in v[1:])})"
    return repr(v)


@dataclass(frozen=True)
class Counterexample:
    assignment: tuple[tuple[str, str], ...]  # (variable, value) rendered
    env: dict  # vid -> value

    def __str__(self) -> str:
        return ", ".join(f"{n} = {val}" for n, val in self.assignment)


class Oracle:
    """Finite standard-model evaluator for one problem."""

    def __init__(self, problem: Problem, domain_size: int = 3, max_len: int = 5,
                 max_nat: int | None = None, fuse: int = 10_000):
        self.problem = problem
        self.sig = problem.sig
        self.domain_size = domain_size
        self.max_len = max_len
        self.max_nat = max_len + 1 if max_nat is None else max_nat
        self.fuse = fuse
        self._enum_cache: dict = {}
        self._size_cache: dict = {}
        self._std_full: dict | None = None

    def standard_interp(self) -> dict:
        """The intended interpretation: leq is the numeric order on 1..d."""
        return {"leq": lambda a, b: a <= b}

    # ----- value enumeration -----

    def _sort_bound(self, sort: Sort) -> int:
        return self.max_nat if sort.name == "nat" else self.max_len

    def enumerate_sort(self, sort: Sort) -> list:
        """All values of `sort` in the fixed deterministic order."""
        key = sort
        cached = self._enum_cache.get(key)
        if cached is not None:
            return cached
        if sort == BOOL:
            out = [False, True]
        elif sort.name in self.sig.datatypes:
            out = []
            for n in range(self._sort_bound(sort) + 1):
                out.extend(self._values_of_size(sort, n))
        else:
            # opaque element sort(s): 1..domain_size
            out = list(range(1, self.domain_size + 1))
        self._enum_cache[key] = out
        return out

    def _values_of_size(self, sort: Sort, n: int) -> list:
        """Datatype values with exactly n recursive-constructor nodes."""
        key = (sort, n)
        cached = self._size_cache.get(key)
        if cached is not None:
            return cached
        out = []
        for ctor in self.sig.constructors_of(sort):
            rec = [i for i, s in enumerate(ctor.arg_sorts)
                   if s.name in self.sig.datatypes]
            if not rec:
                if n == 0:
                    spaces = [self.enumerate_sort(s) for s in ctor.arg_sorts]
                    for combo in itertools.product(*spaces):
                        out.append((ctor.name, *combo))
                continue
            if n == 0:
                continue
            for split in _compositions(n - 1, len(rec)):
                spaces = []
                k = 0
                for i, s in enumerate(ctor.arg_sorts):
                    if i in rec:
                        spaces.append(self._values_of_size(s, split[k]))
                        k += 1
                    else:
                        spaces.append(self.enumerate_sort(s))
                for combo in itertools.product(*spaces):
                    out.append((ctor.name, *combo))
        self._size_cache[key] = out
        return out

    # ----- evaluation -----

    def eval_term(self, t: Term, env: dict, interp: dict, fuse: list) -> object:
        fuse[0] -= 1
        if fuse[0] < 0:
            raise FuseExhausted(f"evaluation exceeded {self.fuse} steps")
        if isinstance(t, Var):
            try:
                return env[t.vid]
            except KeyError:
                raise NotGround(f"unbound variable X{t.vid}") from None
        fn = t.fn
        name = fn.name
        if name == "$true":
            return True
        if name == "$false":
            return False
        args = [self.eval_term(a, env, interp, fuse) for a in t.args]
        if fn.is_constructor:
            return (name, *args)
        if name in interp:
            v = interp[name]
            if callable(v):
                return v(*args)
            if isinstance(v, dict):
                return v[tuple(args)]
            return v
        d = self.problem.definitions.get(name)
        if d is not None:
            return self._eval_defined(d, args, interp, fuse)
        if fn.is_selector:
            return self._eval_selector(fn, args[0])
        raise UnknownSymbol(f"no interpretation for {name}")

    def _eval_selector(self, fn, value):
        cname, idx = fn.selector_of
        if not isinstance(value, tuple) or value[0] != cname:
            # selectors are partial: undefined off their own constructor
            raise MissingCase(f"{fn.name}({show_value(value)})")
        return value[1 + idx]

    def _eval_defined(self, definition, args, interp: dict, fuse: list) -> object:
        # Ground calls are pure given an interpretation, so results are
        # memoized on a table attached to the interpretation itself (the
        # key is an object, so it can never collide with a symbol name).
        memo = interp.get(_MEMO)
        if memo is None:
            memo = interp.setdefault(_MEMO, {})
        key = (definition.name, tuple(args))
        val = memo.get(key, _MISSING)
        if val is not _MISSING:
            return val
        for case in definition.cases:
            binding: dict[int, object] = {}
            if not _match_patterns(case.lhs.args, args, binding):
                continue
            if case.guards and not all(
                self.eval_formula(g, binding, interp, fuse) for g in case.guards
            ):
                continue
            if case.is_predicate_case:
                val = self.eval_formula(case.rhs, binding, interp, fuse)
            else:
                val = self.eval_term(case.rhs, binding, interp, fuse)
            memo[key] = val
            return val
        raise MissingCase(
            f"{definition.name}({', '.join(show_value(a) for a in args)})")

    def eval_formula(self, f: Formula, env: dict, interp: dict, fuse: list) -> bool:
        if isinstance(f, TrueF):
            return True
        if isinstance(f, FalseF):
            return False
        if isinstance(f, Atom):
            return self.eval_term(f.term, env, interp, fuse) is True
        if isinstance(f, Eq):
            return (self.eval_term(f.lhs, env, interp, fuse)
                    == self.eval_term(f.rhs, env, interp, fuse))
        if isinstance(f, Not):
            return not self.eval_formula(f.body, env, interp, fuse)
        if isinstance(f, And):
            return all(self.eval_formula(p, env, interp, fuse) for p in f.parts)
        if isinstance(f, Or):
            return any(self.eval_formula(p, env, interp, fuse) for p in f.parts)
        if isinstance(f, Implies):
            return (not self.eval_formula(f.lhs, env, interp, fuse)
                    or self.eval_formula(f.rhs, env, interp, fuse))
        if isinstance(f, Iff):
            return (self.eval_formula(f.lhs, env, interp, fuse)
                    == self.eval_formula(f.rhs, env, interp, fuse))
        if isinstance(f, (Forall, Exists)):
            spaces = [self.enumerate_sort(v.sort) for v in f.vars]
            want_all = isinstance(f, Forall)
            for combo in itertools.product(*spaces):
                env2 = dict(env)
                for v, val in zip(f.vars, combo):
                    env2[v.vid] = val
                r = self.eval_formula(f.body, env2, interp, fuse)
                if want_all and not r:
                    return False
                if not want_all and r:
                    return True
            return want_all
        raise TypeError(f)

    # ----- whole-formula checking -----

    def exhaustive_check(self, f: Formula, interp: dict | None = None,
                         names: dict[int, str] | None = None) -> Counterexample | None:
        """None if f holds in the standard model, else the first failure.

        The leading universal prefix is enumerated outermost-binder first so
        the returned counterexample is deterministic; `names` optionally maps
        variable ids to display names.
        """
        if interp:
            full = dict(self.standard_interp())
            full.update(interp)
        else:
            # one shared dict so the evaluation memo carries across checks
            full = self._std_full
            if full is None:
                full = self._std_full = dict(self.standard_interp())
        prefix: list[Var] = []
        g = f
        while isinstance(g, Forall):
            prefix.extend(g.vars)
            g = g.body
        spaces = [self.enumerate_sort(v.sort) for v in prefix]

        # Implication antecedents are evaluated at the outermost loop level
        # that binds all their variables, pruning whole subloops early. This
        # cannot change the result or its order: an instance skipped by a
        # false antecedent satisfies the implication.
        guards, core = _split_guards(g)
        level_of = {v.vid: i + 1 for i, v in enumerate(prefix)}
        guards_at: list[list[Formula]] = [[] for _ in range(len(prefix) + 1)]
        for gd in guards:
            lvl = max((level_of.get(vid, 0) for vid in free_vars(gd)),
                      default=0)
            guards_at[lvl].append(gd)

        if not all(self.eval_formula(gd, {}, full, [self.fuse])
                   for gd in guards_at[0]):
            return None

        env: dict[int, object] = {}
        n = len(prefix)

        def loop(i: int) -> Counterexample | None:
            if i == n:
                if self.eval_formula(core, env, full, [self.fuse]):
                    return None
                shown = tuple(
                    ((names or {}).get(v.vid, f"X{v.vid}"),
                     show_value(env[v.vid])) for v in prefix)
                return Counterexample(shown, dict(env))
            vid = prefix[i].vid
            checks = guards_at[i + 1]
            for val in spaces[i]:
                env[vid] = val
                if checks and not all(
                    self.eval_formula(gd, env, full, [self.fuse])
                    for gd in checks
                ):
                    continue
                r = loop(i + 1)
                if r is not None:
                    return r
            return None

        return loop(0)

    def holds(self, f: Formula, interp: dict | None = None) -> bool:
        return self.exhaustive_check(f, interp) is None

    # ----- clause evaluation (for inference checking) -----

    def literal_true(self, lit: Literal, env: dict, interp: dict, fuse: list) -> bool:
        if lit.rhs is None:
            v = self.eval_term(lit.lhs, env, interp, fuse) is True
        else:
            v = (self.eval_term(lit.lhs, env, interp, fuse)
                 == self.eval_term(lit.rhs, env, interp, fuse))
        return v if lit.positive else not v

    def clause_valid(self, clause: Clause, interp: dict) -> bool:
        """Is the universal closure of the clause true under interp?"""
        cvars: dict[int, Var] = {}
        for lit in clause.literals:
            for t in lit.terms():
                _collect_vars(t, cvars)
        ordered = [cvars[k] for k in sorted(cvars)]
        spaces = [self.enumerate_sort(v.sort) for v in ordered]
        for combo in itertools.product(*spaces):
            env = {v.vid: val for v, val in zip(ordered, combo)}
            fuse = [self.fuse]
            if not any(self.literal_true(l, env, interp, fuse)
                       for l in clause.literals):
                return False
        return True


def _split_guards(f: Formula) -> tuple[list[Formula], Formula]:
    """Peel `A1 ∧ … ∧ Ak → C` into ([A1..Ak], C); other shapes give ([], f)."""
    guards: list[Formula] = []
    while isinstance(f, Implies):
        if isinstance(f.lhs, And):
            guards.extend(f.lhs.parts)
        else:
            guards.append(f.lhs)
        f = f.rhs
    return guards, f


def _collect_vars(t: Term, out: dict[int, Var]) -> None:
    if isinstance(t, Var):
        out.setdefault(t.vid, t)
    elif not t.ground:
        for a in t.args:
            _collect_vars(a, out)


def _match_patterns(patterns, values, binding: dict) -> bool:
    for p, v in zip(patterns, values):
        if not _match_pattern(p, v, binding):
            return False
    return True


def _match_pattern(pattern: Term, value, binding: dict) -> bool:
    if isinstance(pattern, Var):
        bound = binding.get(pattern.vid, _MISSING)
        if bound is _MISSING:
            binding[pattern.vid] = value
            return True
        return bound == value
    if not isinstance(value, tuple) or value[0] != pattern.fn.name:
        return False
    return _match_patterns(pattern.args, value[1:], binding)


_MISSING = object()
_MEMO = object()  # reserved interp key holding the per-interpretation memo


def _compositions(total: int, parts: int):
    """All tuples of `parts` non-negative ints summing to total, lex order."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


# ---------------------------------------------------------------------------
# inference-step soundness


def _clause_symbols(clauses) -> dict[str, object]:
    syms: dict[str, object] = {}

    def go(t: Term):
        if isinstance(t, App):
            syms.setdefault(t.fn.name, t.fn)
            for a in t.args:
                go(a)

    for c in clauses:
        for lit in c.literals:
            go(lit.lhs)
            if lit.rhs is not None:
                go(lit.rhs)
    return syms


def _interp_space(oracle: Oracle, decl) -> list:
    """All interpretations of one uninterpreted symbol, deterministic order."""
    if decl.arity == 0:
        return oracle.enumerate_sort(decl.result)
    arg_spaces = [oracle.enumerate_sort(s) for s in decl.arg_sorts]
    points = list(itertools.product(*arg_spaces))
    values = oracle.enumerate_sort(decl.result)
    out = []
    for assignment in itertools.product(values, repeat=len(points)):
        out.append(dict(zip(points, assignment)))
    return out


def _space_size(oracle: Oracle, decl) -> int:
    if decl.arity == 0:
        return len(oracle.enumerate_sort(decl.result))
    n = 1
    for s in decl.arg_sorts:
        n *= len(oracle.enumerate_sort(s))
    return len(oracle.enumerate_sort(decl.result)) ** n


def check_inference_soundness(oracle: Oracle, premises: list[Clause],
                              conclusions: list[Clause],
                              fresh_symbols: tuple[str, ...] = (),
                              cap: int = 1 << 20) -> dict | None:
    """Semantic check of one inference step over finite standard models.

    Enumerates every interpretation of the uninterpreted symbols occurring
    in the step (datatypes are standard and bounded; defined functions follow
    their definitions; everything else, including the base order, ranges over
    all possible interpretations). Whenever the premises are valid there must
    be SOME assignment to `fresh_symbols` (symbols this step introduced, e.g.
    induction witnesses) under which every conclusion is valid.

    Returns None if the step is sound on this domain, otherwise a dict with
    the failing interpretation rendered for error messages. Raises
    OracleBudget when the interpretation space exceeds `cap`.
    """
    syms = _clause_symbols(premises + conclusions)
    # Defined functions evaluate through their definitions, which may bottom
    # out in uninterpreted symbols (the base order) that never occur in the
    # step's clauses themselves; those need an interpretation as well.
    pending = [n for n in syms if n in oracle.problem.definitions]
    reached = set(pending)
    while pending:
        for callee in sorted(oracle.problem.calls.get(pending.pop(), ())):
            if callee in reached:
                continue
            reached.add(callee)
            if callee in oracle.problem.definitions:
                pending.append(callee)
            elif callee in oracle.sig:
                decl = oracle.sig.get(callee)
                if not decl.is_constructor:
                    syms.setdefault(callee, decl)
    old_decls, fresh_decls = [], []
    for name in sorted(syms):
        decl = syms[name]
        if (decl.is_constructor or name in oracle.problem.definitions
                or name in ("$true", "$false")):
            continue
        (fresh_decls if name in fresh_symbols else old_decls).append(decl)

    total = 1
    for d in old_decls + fresh_decls:
        total *= _space_size(oracle, d)
    if total > cap:
        raise OracleBudget(f"interpretation space {total} exceeds cap {cap}")

    old_spaces = [_interp_space(oracle, d) for d in old_decls]
    fresh_spaces = [_interp_space(oracle, d) for d in fresh_decls]

    for old_combo in itertools.product(*old_spaces):
        interp = {d.name: v for d, v in zip(old_decls, old_combo)}
        if not all(oracle.clause_valid(p, interp) for p in premises):
            continue
        witnessed = False
        for fresh_combo in itertools.product(*fresh_spaces):
            full = dict(interp)
            full.update({d.name: v for d, v in zip(fresh_decls, fresh_combo)})
            if all(oracle.clause_valid(c, full) for c in conclusions):
                witnessed = True
                break
        if not witnessed:
            return {
                "interpretation": {
                    d.name: _show_interp(v) for d, v in zip(old_decls, old_combo)
                },
            }
    return None


def _show_interp(v) -> str:
    if isinstance(v, dict):
        return "{" + ", ".join(
            f"({', '.join(show_value(a) for a in k)}) -> {show_value(b)}"
            for k, b in v.items()) + "}"
    return show_value(v) if not callable(v) else "<builtin>"
