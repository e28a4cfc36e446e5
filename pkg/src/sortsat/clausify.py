"""Clausification: NNF, skolemization, CNF with definitional naming.

The pipeline is standard: eliminate <->/->, push negations to atoms,
skolemize existentials under the enclosing universals, then distribute
disjunction over conjunction. Subformulas whose naive distribution would
exceed a clause budget are named with fresh predicates applied to their
free variables; since naming happens in negation normal form, only the
defining direction `name -> subformula` is needed, which keeps the result
equisatisfiable (and equivalent over the original symbols).
"""

from __future__ import annotations

from .clauses import Clause, Derivation, Literal, canonical_literals
from .formulas import (
    And, Atom, Eq, Exists, FalseF, Forall, Formula, Iff, Implies, Not, Or,
    TrueF, fAnd, fOr, free_vars, subst_formula,
)
from .terms import Signature, Term, Var, app

__all__ = ["clausify", "clausify_all", "NAMING_THRESHOLD"]

# a subformula is named when distributing it would exceed this many clauses
NAMING_THRESHOLD = 16


def nnf(f: Formula, positive: bool = True) -> Formula:
    """Negation normal form of f (or of ~f when positive is False)."""
    if isinstance(f, TrueF):
        return f if positive else FalseF()
    if isinstance(f, FalseF):
        return f if positive else TrueF()
    if isinstance(f, (Atom, Eq)):
        return f if positive else Not(f)
    if isinstance(f, Not):
        return nnf(f.body, not positive)
    if isinstance(f, And):
        parts = tuple(nnf(p, positive) for p in f.parts)
        return fAnd(parts) if positive else fOr(parts)
    if isinstance(f, Or):
        parts = tuple(nnf(p, positive) for p in f.parts)
        return fOr(parts) if positive else fAnd(parts)
    if isinstance(f, Implies):
        if positive:
            return fOr((nnf(f.lhs, False), nnf(f.rhs, True)))
        return fAnd((nnf(f.lhs, True), nnf(f.rhs, False)))
    if isinstance(f, Iff):
        a, b = f.lhs, f.rhs
        if positive:
            return fAnd((fOr((nnf(a, False), nnf(b, True))),
                         fOr((nnf(b, False), nnf(a, True)))))
        return fAnd((fOr((nnf(a, True), nnf(b, True))),
                     fOr((nnf(a, False), nnf(b, False)))))
    if isinstance(f, Forall):
        body = nnf(f.body, positive)
        return Forall(f.vars, body) if positive else Exists(f.vars, body)
    if isinstance(f, Exists):
        body = nnf(f.body, positive)
        return Exists(f.vars, body) if positive else Forall(f.vars, body)
    raise TypeError(f)


def skolemize(f: Formula, sig: Signature) -> tuple[Formula, list[tuple[str, Var, Term]]]:
    """Replace existentials in an NNF formula by skolem terms.

    Returns the quantifier-stripped matrix (universal variables left free)
    and the introduced skolems as (name, replaced variable, skolem term).
    """
    skolems: list[tuple[str, Var, Term]] = []

    def go(f: Formula, universals: tuple[Var, ...]) -> Formula:
        if isinstance(f, (TrueF, FalseF, Atom, Eq, Not)):
            return f
        if isinstance(f, And):
            return fAnd(go(p, universals) for p in f.parts)
        if isinstance(f, Or):
            return fOr(go(p, universals) for p in f.parts)
        if isinstance(f, Forall):
            return go(f.body, universals + f.vars)
        if isinstance(f, Exists):
            subst = {}
            for v in f.vars:
                d = sig.fresh_skolem(v.sort, tuple(u.sort for u in universals))
                t = app(d, *universals)
                subst[v.vid] = t
                skolems.append((d.name, v, t))
            return go(subst_formula(subst, f.body), universals)
        raise TypeError(f)

    return go(f, ()), skolems


def _count_clauses(f: Formula) -> int:
    if isinstance(f, And):
        return sum(_count_clauses(p) for p in f.parts)
    if isinstance(f, Or):
        n = 1
        for p in f.parts:
            n *= _count_clauses(p)
        return n
    return 1


def _to_literal(f: Formula) -> Literal | None:
    """Literal for an NNF leaf; None for `true` (the disjunct is valid)."""
    if isinstance(f, TrueF):
        return None
    if isinstance(f, Atom):
        return Literal(True, f.term)
    if isinstance(f, Eq):
        return Literal(True, f.lhs, f.rhs)
    if isinstance(f, Not):
        inner = f.body
        if isinstance(inner, Atom):
            return Literal(False, inner.term)
        if isinstance(inner, Eq):
            return Literal(False, inner.lhs, inner.rhs)
    raise TypeError(f)


def _matrix_to_clauses(f: Formula, sig: Signature, extra: list) -> list[list[Literal]]:
    """CNF of a skolemized NNF matrix. May append named definitions to extra."""
    if isinstance(f, TrueF):
        return []
    if isinstance(f, FalseF):
        return [[]]
    if isinstance(f, (Atom, Eq, Not)):
        lit = _to_literal(f)
        return [[lit]] if lit is not None else []
    if isinstance(f, And):
        out = []
        for p in f.parts:
            out.extend(_matrix_to_clauses(p, sig, extra))
        return out
    if isinstance(f, Or):
        parts = list(f.parts)
        # name conjunctive parts whose distribution would blow up
        total = _count_clauses(f)
        if total > NAMING_THRESHOLD:
            for i, p in enumerate(parts):
                if isinstance(p, And) and _count_clauses(p) > 1:
                    parts[i] = _name_subformula(p, sig, extra)
        product: list[list[Literal]] = [[]]
        for p in parts:
            pcl = _matrix_to_clauses(p, sig, extra)
            if pcl == []:  # part is valid => whole disjunction is valid
                return []
            product = [pc + qc for pc in product for qc in pcl]
        return product
    raise TypeError(f)


def _name_subformula(p: Formula, sig: Signature, extra: list) -> Formula:
    fv = list(free_vars(p).values())
    d = sig.fresh_defpred(tuple(v.sort for v in fv))
    name_atom = Atom(app(d, *fv))
    # defining direction only (p occurs positively in NNF): name -> p
    for cl in _matrix_to_clauses(p, sig, extra):
        extra.append([_to_literal(Not(name_atom))] + cl)
    return name_atom


def clausify(f: Formula, sig: Signature, *, goal: bool = False,
             label: str = "") -> list[Clause]:
    """Clausify one formula. When goal is set, f is negated first and the
    resulting clauses are flagged as goal clauses. Variables are renamed
    per clause, so clause variable ids are self-contained."""
    g = nnf(f, positive=not goal)
    matrix, _skolems = skolemize(g, sig)
    extra: list[list[Literal]] = []
    raw = _matrix_to_clauses(matrix, sig, extra)
    out = []
    rule = "negated_conjecture" if goal else "input"
    for lits in raw + extra:
        canon = canonical_literals(lits)
        out.append(Clause(canon, derivation=Derivation(rule, meta=(label,)),
                          goal=goal))
    return out


def clausify_all(axioms, conjecture: Formula | None, sig: Signature) -> list[Clause]:
    """Clausify labeled axioms plus a (negated) conjecture."""
    out: list[Clause] = []
    for f, label in axioms:
        out.extend(clausify(f, sig, label=label))
    if conjecture is not None:
        out.extend(clausify(conjecture, sig, goal=True, label="conjecture"))
    return out
