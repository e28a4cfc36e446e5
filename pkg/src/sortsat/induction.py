"""Induction inferences over recursively defined datatypes.

An induction step takes a clause `L̄[t̄] ∨ C` whose literal `L̄[t̄]` is ground,
picks an induction schema, and emits the clausified negation of the schema's
hypothesis with the schema's conclusion already resolved against the premise.
For the plain structural schema on lists this yields exactly

    { L̄[nil] ∨ L[σys] ∨ C ,  L̄[nil] ∨ L̄[cons(σx,σys)] ∨ C }

with fresh constants σx, σys, and for a two-partition computation schema the
three-clause analogue whose step hypotheses run over the partition templates.

Conditions: ground unit clauses mentioning the induction terms can be folded
into the induced property (L' = conditions → L).  Their instances at the
premise terms are resolved away against the condition units at generation
time, so the emitted clauses never mention the original terms; the units
join the premise list of the derivation record.

Schemata other than the structural one are extracted from the recursive
definitions themselves and are trusted by the prover; their validity is the
oracle's job (each application exposes its induction axiom as a formula).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .clauses import Clause, Derivation, Literal, _term_str, canonical_literals, clause_vars
from .errors import NotGround, SchemaMismatch, SortMismatch
from .formulas import Atom, Eq, Forall, Formula, Implies, Not, fAnd
from .problem import Problem
from .terms import (App, Signature, Sort, Term, Var, app, apply_subst,
                    subterms, term_key)

__all__ = [
    "InductionSchema",
    "SchemaCase",
    "InductionApplication",
    "InductionConfig",
    "derive_schemata",
    "structural_schema",
    "structural_induction",
    "computation_induction",
    "apply_schema",
    "select_induction_applications",
    "condition_sets",
    "closed_axiom",
]


# ---------------------------------------------------------------------------
# schemata


@dataclass(frozen=True)
class SchemaCase:
    """One case of a schema: constructor patterns plus hypothesis instances.

    Patterns and hypotheses are terms over schema-local variables numbered
    from 0; each hypothesis names the terms the induced property is assumed
    for in this case.
    """

    patterns: tuple[Term, ...]
    hyps: tuple[tuple[Term, ...], ...] = ()


@dataclass(frozen=True)
class InductionSchema:
    sid: str
    kind: str                      # "structural" | "computation"
    sorts: tuple[Sort, ...]        # sorts of the induction positions
    cases: tuple[SchemaCase, ...]
    source: str | None = None      # defining function, for computation schemata
    positions: tuple[int, ...] = ()  # argument positions of source driving recursion

    @property
    def arity(self) -> int:
        return len(self.sorts)


def _case_vars(case: SchemaCase) -> tuple[Var, ...]:
    """Schema-local variables of a case, in first-occurrence order."""
    seen: dict[int, Var] = {}
    for t in case.patterns + tuple(x for h in case.hyps for x in h):
        for s in subterms(t):
            if isinstance(s, Var) and s.vid not in seen:
                seen[s.vid] = s
    return tuple(seen.values())


def structural_schema(sig: Signature, sort: Sort) -> InductionSchema:
    """The one-constructor-layer schema of a recursive datatype sort."""
    ctors = sig.constructors_of(sort)
    if not ctors:
        raise SortMismatch(f"{sort} is not a datatype sort")
    cases = []
    recursive = False
    for ctor in ctors:
        args = tuple(Var(i, s) for i, s in enumerate(ctor.arg_sorts))
        hyps = tuple((a,) for a in args if a.sort == sort)
        recursive = recursive or bool(hyps)
        cases.append(SchemaCase((app(ctor, *args) if args else app(ctor),), hyps))
    if not recursive:
        raise SortMismatch(f"{sort} has no recursive constructor")
    return InductionSchema(
        sid=f"structural:{sort.name}", kind="structural",
        sorts=(sort,), cases=tuple(cases))


def _term_sort(t: Term) -> Sort:
    return t.sort if isinstance(t, Var) else t.fn.result


def _renumber(cases: list[SchemaCase]) -> tuple[SchemaCase, ...]:
    """Renumber each case's variables to a dense 0..m-1 range."""
    out = []
    for case in cases:
        ren = {v.vid: Var(i, v.sort) for i, v in enumerate(_case_vars(case))}
        out.append(SchemaCase(
            tuple(apply_subst(ren, p) for p in case.patterns),
            tuple(tuple(apply_subst(ren, x) for x in h) for h in case.hyps),
        ))
    return tuple(out)


def _rec_calls(rhs, name: str) -> list[App]:
    """Applications of `name` inside a definition body, leftmost-outermost."""
    stack: list = [rhs]
    found: list[App] = []
    seen_keys: set = set()
    while stack:
        node = stack.pop(0)
        if isinstance(node, Formula):
            if isinstance(node, (Atom,)):
                stack.append(node.term)
            elif isinstance(node, Eq):
                stack.extend((node.lhs, node.rhs))
            elif isinstance(node, Not):
                stack.append(node.body)
            elif hasattr(node, "parts"):
                stack.extend(node.parts)
            elif hasattr(node, "lhs"):
                stack.extend((node.lhs, node.rhs))
            elif hasattr(node, "body"):
                stack.append(node.body)
            continue
        for s in subterms(node):
            if isinstance(s, App) and s.fn.name == name:
                k = tuple(str(a) for a in s.args)
                if k not in seen_keys:
                    seen_keys.add(k)
                    found.append(s)
    return found


def derive_schemata(p: Problem) -> tuple[InductionSchema, ...]:
    """Structural schemata plus computation schemata from the definitions.

    A definition contributes a schema whose cases mirror its own pattern
    cases and whose hypotheses are the recursive-call arguments projected to
    the pattern positions.  Schemata all of whose hypotheses are bare pattern
    variables are structural recursion in disguise and are dropped as
    duplicates of the structural schema.
    """
    sig = p.sig
    out: list[InductionSchema] = []
    for ctor_names in sig.datatypes.values():
        sort = sig.get(ctor_names[0]).result
        try:
            out.append(structural_schema(sig, sort))
        except SortMismatch:
            pass
    for name, defn in p.definitions.items():
        cases = defn.cases
        if not cases:
            continue
        arity = len(cases[0].lhs.args)
        pos = tuple(sorted({
            i for case in cases for i in range(arity)
            if isinstance(case.lhs.args[i], App) and case.lhs.args[i].fn.is_constructor
        }))
        if not pos:
            continue
        # Guarded branches of one pattern arm are one schema case with the
        # union of their recursive calls as hypotheses.
        grouped: dict[tuple, tuple] = {}
        order: list[tuple] = []
        for case in cases:
            patterns = tuple(case.lhs.args[i] for i in pos)
            k = tuple(map(term_key, patterns))
            if k not in grouped:
                grouped[k] = (patterns, [])
                order.append(k)
            hyps = grouped[k][1]
            for body in (*case.guards, case.rhs):
                for call in _rec_calls(body, name):
                    h = tuple(call.args[i] for i in pos)
                    if h not in hyps:
                        hyps.append(h)
        schema_cases: list[SchemaCase] = []
        any_rec = False
        all_var_hyps = True
        for k in order:
            patterns, hyps = grouped[k]
            if hyps:
                any_rec = True
                all_var_hyps = all_var_hyps and all(
                    isinstance(x, Var) for h in hyps for x in h)
            schema_cases.append(SchemaCase(patterns, tuple(hyps)))
        if not any_rec or all_var_hyps:
            continue
        out.append(InductionSchema(
            sid=f"computation:{name}", kind="computation",
            sorts=tuple(_term_sort(cases[0].lhs.args[i]) for i in pos),
            cases=_renumber(schema_cases), source=name, positions=pos))
    return tuple(out)


# ---------------------------------------------------------------------------
# abstraction and the axiom formula


def _abstract_term(t: Term, mapping: dict, hits: list[int], occurrences) -> Term:
    v = mapping.get(t)
    if v is not None:
        k = hits[0]
        hits[0] += 1
        return v if occurrences is None or k in occurrences else t
    if isinstance(t, Var) or not t.args:
        return t
    return app(t.fn, *(_abstract_term(a, mapping, hits, occurrences) for a in t.args))


def _abstract_literal(lit: Literal, mapping: dict,
                      occurrences=None) -> tuple[Literal, int]:
    hits = [0]
    lhs = _abstract_term(lit.lhs, mapping, hits, occurrences)
    rhs = (_abstract_term(lit.rhs, mapping, hits, occurrences)
           if lit.rhs is not None else None)
    return Literal(lit.positive, lhs, rhs), hits[0]


def occurrence_count(lit: Literal, terms: tuple[Term, ...]) -> int:
    _, n = _abstract_literal(lit, {t: t for t in terms})
    return n


def _lit_formula(lit: Literal) -> Formula:
    f = Atom(lit.lhs) if lit.is_atom else Eq(lit.lhs, lit.rhs)
    return f if lit.positive else Not(f)


def _vsub(vvars: tuple[Var, ...], args: tuple[Term, ...]) -> dict:
    return {v.vid: a for v, a in zip(vvars, args)}


def _axiom_formula(schema: InductionSchema, l_abs: Literal,
                   cond_abs: list[Literal], vvars: tuple[Var, ...],
                   shift: int) -> Formula:
    """The induction axiom this application instantiates, as one formula."""

    def lprime(args: tuple[Term, ...]) -> Formula:
        sub = _vsub(vvars, args)
        f = _lit_formula(l_abs.negate().apply(sub))
        for u in reversed(cond_abs):
            f = Implies(_lit_formula(u.apply(sub)), f)
        return f

    cases_f = []
    for case in schema.cases:
        ren = {v.vid: Var(shift + v.vid, v.sort) for v in _case_vars(case)}
        pats = tuple(apply_subst(ren, p) for p in case.patterns)
        hyps = [lprime(tuple(apply_subst(ren, x) for x in h)) for h in case.hyps]
        body = Implies(fAnd(hyps), lprime(pats)) if hyps else lprime(pats)
        cvars = tuple(ren[v.vid] for v in _case_vars(case))
        cases_f.append(Forall(cvars, body) if cvars else body)
    return Implies(fAnd(cases_f), Forall(vvars, lprime(vvars)))


def closed_axiom(axiom: Formula, sig: Signature) -> Formula:
    """Universally close an axiom over its skolem constants.

    Validity of an induction axiom must not depend on what the premise's
    skolem constants denote, so checks replace each by a fresh variable.
    """
    from .formulas import free_vars, subst_formula

    names: list[str] = []

    def scan(f: Formula) -> None:
        if isinstance(f, Atom):
            terms = [f.term]
        elif isinstance(f, Eq):
            terms = [f.lhs, f.rhs]
        elif isinstance(f, Not):
            scan(f.body)
            return
        elif hasattr(f, "parts"):
            for part in f.parts:
                scan(part)
            return
        elif isinstance(f, (Implies,)) or hasattr(f, "lhs"):
            scan(f.lhs)
            scan(f.rhs)
            return
        elif hasattr(f, "body"):
            scan(f.body)
            return
        else:
            return
        for t in terms:
            for s in subterms(t):
                if (isinstance(s, App) and s.fn.is_skolem and not s.args
                        and s.fn.name not in names):
                    names.append(s.fn.name)

    scan(axiom)
    if not names:
        return axiom
    base = 1 + max((v for v in free_vars(axiom)), default=-1)
    fresh = [Var(base + i, sig.get(n).result) for i, n in enumerate(names)]

    def replace(f: Formula) -> Formula:
        rep = {n: v for n, v in zip(names, fresh)}

        def rt(t: Term) -> Term:
            if isinstance(t, App):
                if not t.args and t.fn.name in rep:
                    return rep[t.fn.name]
                return app(t.fn, *(rt(a) for a in t.args)) if t.args else t
            return t

        if isinstance(f, Atom):
            return Atom(rt(f.term))
        if isinstance(f, Eq):
            return Eq(rt(f.lhs), rt(f.rhs))
        if isinstance(f, Not):
            return Not(replace(f.body))
        if hasattr(f, "parts"):
            return type(f)(tuple(replace(x) for x in f.parts))
        if hasattr(f, "lhs"):
            return type(f)(replace(f.lhs), replace(f.rhs))
        if hasattr(f, "body") and hasattr(f, "vars"):
            return type(f)(f.vars, replace(f.body))
        return f

    return Forall(tuple(fresh), replace(axiom))


# ---------------------------------------------------------------------------
# applying a schema


@dataclass(frozen=True)
class InductionApplication:
    """One induction inference: premises, fresh names, emitted obligations."""

    premise: int
    literal: Literal
    terms: tuple[Term, ...]
    schema: InductionSchema
    conditions: tuple[int, ...]
    skolems: tuple[str, ...]
    conclusions: tuple[Clause, ...]
    axiom: Formula


def apply_schema(c: Clause, li: int, terms: tuple[Term, ...],
                 schema: InductionSchema, sig: Signature,
                 conditions: tuple[Clause, ...] = (),
                 occurrences=None, app_id: int = -1) -> InductionApplication:
    """Instantiate a schema on ground terms of a clause literal.

    Emits the CNF of the negated schema hypothesis, each clause extended with
    the premise's side literals; the schema conclusion is resolved against
    the premise literal and the condition units here, at generation time.
    """
    if len(terms) != schema.arity:
        raise SchemaMismatch(
            f"{schema.sid} wants {schema.arity} terms, got {len(terms)}")
    for t, s in zip(terms, schema.sorts):
        if not t.ground:
            raise NotGround(str(t))
        if _term_sort(t) != s:
            raise SortMismatch(f"{t} : {_term_sort(t)} vs schema sort {s}")
        if isinstance(t, App) and t.fn.is_constructor:
            raise SchemaMismatch(f"constructor-headed induction term {t}")
    lit = c.literals[li]
    vstart = clause_vars(c)
    vvars = tuple(Var(vstart + i, s) for i, s in enumerate(schema.sorts))
    mapping = dict(zip(terms, vvars))
    l_abs, nhits = _abstract_literal(lit, mapping, occurrences)
    if l_abs == lit:
        raise SchemaMismatch("induction terms do not occur in the literal")
    cond_abs: list[Literal] = []
    cond_cids: list[int] = []
    for u in conditions:
        ua, _ = _abstract_literal(u.literals[0], mapping)
        cond_abs.append(ua)
        cond_cids.append(u.cid)
    side = [l for k, l in enumerate(c.literals) if k != li]

    pieces: list[list[list[Literal]]] = []
    skolems: list[str] = []
    for case in schema.cases:
        smap: dict[int, Term] = {}
        for v in _case_vars(case):
            d = sig.fresh_skolem(v.sort)
            smap[v.vid] = app(d)
            skolems.append(d.name)
        pats = tuple(apply_subst(smap, p) for p in case.patterns)
        conj: list[list[Literal]] = []
        for h in case.hyps:
            hsub = _vsub(vvars, tuple(apply_subst(smap, x) for x in h))
            ih = [u.negate().apply(hsub) for u in cond_abs]
            ih.append(l_abs.negate().apply(hsub))
            conj.append(ih)
        psub = _vsub(vvars, pats)
        for u in cond_abs:
            conj.append([u.apply(psub)])
        conj.append([l_abs.apply(psub)])
        pieces.append(conj)

    subst_txt = tuple((f"X{v.vid}", _term_str(t)) for v, t in zip(vvars, terms))
    meta = (app_id, schema.kind, schema.source or "", tuple(skolems))
    concls: list[Clause] = []
    seen: set = set()
    for combo in itertools.product(*pieces):
        lits = [l for part in combo for l in part] + side
        cl = Clause(
            canonical_literals(lits),
            derivation=Derivation("induction", (c.cid, *cond_cids),
                                  subst_txt, meta),
            goal=c.goal, ind_depth=c.ind_depth + 1)
        k = cl.key()
        if k not in seen:
            seen.add(k)
            concls.append(cl)
    axiom = _axiom_formula(schema, l_abs, cond_abs, vvars, vstart + len(vvars))
    return InductionApplication(
        premise=c.cid, literal=lit, terms=tuple(terms), schema=schema,
        conditions=tuple(cond_cids), skolems=tuple(skolems),
        conclusions=tuple(concls), axiom=axiom)


def _lit_index(c: Clause, lit) -> int:
    if isinstance(lit, int):
        return lit
    for i, l in enumerate(c.literals):
        if l == lit:
            return i
    raise SchemaMismatch("literal not in clause")


def structural_induction(c: Clause, lit, t: Term, sig: Signature,
                         conditions: tuple[Clause, ...] = (),
                         app_id: int = -1) -> list[Clause]:
    """Two-clause structural induction on t (see module docstring)."""
    li = _lit_index(c, lit)
    schema = structural_schema(sig, _term_sort(t))
    application = apply_schema(c, li, (t,), schema, sig, conditions,
                               app_id=app_id)
    return list(application.conclusions)


def computation_induction(c: Clause, lit, t, schema: InductionSchema,
                          sig: Signature,
                          conditions: tuple[Clause, ...] = (),
                          app_id: int = -1) -> list[Clause]:
    """Induction following a recursive definition's own case analysis."""
    if schema.kind != "computation":
        raise SchemaMismatch(f"{schema.sid} is not a computation schema")
    li = _lit_index(c, lit)
    terms = t if isinstance(t, tuple) else (t,)
    application = apply_schema(c, li, terms, schema, sig, conditions,
                               app_id=app_id)
    return list(application.conclusions)


# ---------------------------------------------------------------------------
# candidate selection


@dataclass(frozen=True)
class InductionConfig:
    schemata: tuple[InductionSchema, ...]
    ind: str = "both"              # struct | comp | both
    indoct: bool = False           # allow complex (non-constant) ground terms
    max_depth: int = 2
    per_clause_cap: int = 12
    max_conditions: int = 3
    subset_abstraction: bool = False
    unit_only: bool = True         # induct only on unit clauses
    negative_only: bool = True     # induct only on goal-shaped literals


def _lit_ground(lit: Literal) -> bool:
    return lit.lhs.ground and (lit.rhs is None or lit.rhs.ground)


def _term_ok(t: Term, sort: Sort, config: InductionConfig,
             projected: bool = False) -> bool:
    """Is t an acceptable induction term?

    Plain candidates are skolem constants unless the indoct flag admits any
    ground term; terms projected from a recursion position of the schema's
    own source function are admitted at any complexity.
    """
    if not isinstance(t, App) or not t.ground or _term_sort(t) != sort:
        return False
    if t.fn.is_constructor:
        return False
    if projected or config.indoct:
        return True
    return t.fn.is_skolem and not t.args


def _lit_terms(lit: Literal):
    yield from subterms(lit.lhs)
    if lit.rhs is not None:
        yield from subterms(lit.rhs)


def _template_heads(schema: InductionSchema) -> frozenset[str]:
    """Outermost non-constructor head symbols of the hypothesis templates."""
    return frozenset(
        x.fn.name
        for case in schema.cases for h in case.hyps for x in h
        if isinstance(x, App) and not x.fn.is_constructor)


def select_induction_applications(c: Clause, config: InductionConfig) -> list:
    """Candidate (literal index, terms, schema) triples for one clause.

    Defaults follow the goal-directed heuristic: only goal-derived clauses,
    only ground literals, skolem constants as induction terms (complex terms
    behind the indoct flag), computation schemata only when the clause
    mentions their source function and the terms sit at its recursion
    positions.
    """
    if not c.goal or c.ind_depth >= config.max_depth:
        return []
    if config.unit_only and len(c.literals) != 1:
        return []
    mentioned = {
        s.fn.name for lit in c.literals for s in _lit_terms(lit)
        if isinstance(s, App)
    }
    out: list = []
    seen: set = set()
    for li, lit in enumerate(c.literals):
        if not _lit_ground(lit):
            continue
        if config.negative_only and lit.positive:
            continue
        for schema in config.schemata:
            if schema.kind == "structural" and config.ind == "comp":
                continue
            if schema.kind == "computation" and config.ind == "struct":
                continue
            if schema.source is None:
                for t in _lit_terms(lit):
                    if not _term_ok(t, schema.sorts[0], config):
                        continue
                    key = (li, (t,), schema.sid)
                    if key not in seen:
                        seen.add(key)
                        out.append((li, (t,), schema))
            else:
                has_source = schema.source in mentioned
                if not has_source and not (_template_heads(schema) & mentioned):
                    continue
                if has_source:
                    for s in _lit_terms(lit):
                        if not (isinstance(s, App) and s.fn.name == schema.source):
                            continue
                        terms = tuple(s.args[i] for i in schema.positions)
                        if len(set(map(str, terms))) != len(terms):
                            continue
                        if not all(_term_ok(t, so, config, projected=True)
                                   for t, so in zip(terms, schema.sorts)):
                            continue
                        if any(isinstance(t, App) and t.fn.name == schema.source
                               for t in terms):
                            continue  # self-call: never abstract below the source
                        if len(terms) > 1 and any(
                                t1 is not t2 and t2 in set(subterms(t1))
                                for t1 in terms for t2 in terms):
                            continue
                        key = (li, tuple(map(str, terms)), schema.sid)
                        if key not in seen:
                            seen.add(key)
                            out.append((li, terms, schema))
                elif schema.arity == 1:
                    # Hypothesis-template heads appear without the source
                    # function itself: offer the plain candidates.
                    for t in _lit_terms(lit):
                        if not _term_ok(t, schema.sorts[0], config):
                            continue
                        key = (li, (str(t),), schema.sid)
                        if key not in seen:
                            seen.add(key)
                            out.append((li, (t,), schema))
            if len(out) >= config.per_clause_cap:
                return out[:config.per_clause_cap]
    return out


def condition_sets(c: Clause, terms: tuple[Term, ...], units,
                   max_conditions: int = 3) -> list[tuple[Clause, ...]]:
    """Condition-unit subsets to try: none, each singleton, then all together.

    Relevant units are ground unit clauses (other than the premise itself)
    mentioning at least one induction term, in ascending clause-id order.
    """
    wanted = set(map(str, terms))
    rel: list[Clause] = []
    for u in sorted(units, key=lambda u: u.cid):
        if u.cid == c.cid or len(u.literals) != 1:
            continue
        lit = u.literals[0]
        if not _lit_ground(lit):
            continue
        if any(str(s) in wanted for s in _lit_terms(lit)):
            rel.append(u)
        if len(rel) >= max_conditions + 1:
            break
    rel = rel[:max_conditions + 1]
    sets: list[tuple[Clause, ...]] = [()]
    sets.extend((u,) for u in rel)
    if 2 <= len(rel) <= max_conditions:
        sets.append(tuple(rel))
    return sets
