"""First-order formula AST used by the frontend, theory library and oracle."""

from __future__ import annotations

from dataclasses import dataclass

from .terms import App, Subst, Term, Var, apply_subst, term_key

__all__ = [
    "Formula", "Atom", "Eq", "Not", "And", "Or", "Implies", "Iff",
    "Forall", "Exists", "TrueF", "FalseF", "fAnd", "fOr", "fNot",
    "free_vars", "subst_formula", "formula_key",
]


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class TrueF(Formula):
    def __str__(self):
        return "true"


@dataclass(frozen=True)
class FalseF(Formula):
    def __str__(self):
        return "false"


@dataclass(frozen=True)
class Atom(Formula):
    term: Term  # Bool-sorted application

    def __str__(self):
        return repr(self.term)


@dataclass(frozen=True)
class Eq(Formula):
    lhs: Term
    rhs: Term

    def __str__(self):
        return f"{self.lhs!r} = {self.rhs!r}"


@dataclass(frozen=True)
class Not(Formula):
    body: Formula

    def __str__(self):
        return f"~({self.body})"


@dataclass(frozen=True)
class And(Formula):
    parts: tuple[Formula, ...]

    def __str__(self):
        return "(" + " & ".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class Or(Formula):
    parts: tuple[Formula, ...]

    def __str__(self):
        return "(" + " | ".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class Implies(Formula):
    lhs: Formula
    rhs: Formula

    def __str__(self):
        return f"({self.lhs} -> {self.rhs})"


@dataclass(frozen=True)
class Iff(Formula):
    lhs: Formula
    rhs: Formula

    def __str__(self):
        return f"({self.lhs} <-> {self.rhs})"


@dataclass(frozen=True)
class Forall(Formula):
    vars: tuple[Var, ...]
    body: Formula

    def __str__(self):
        vs = ", ".join(f"X{v.vid}:{v.sort}" for v in self.vars)
        return f"(forall {vs}. {self.body})"


@dataclass(frozen=True)
class Exists(Formula):
    vars: tuple[Var, ...]
    body: Formula

    def __str__(self):
        vs = ", ".join(f"X{v.vid}:{v.sort}" for v in self.vars)
        return f"(exists {vs}. {self.body})"


def fAnd(parts) -> Formula:
    parts = tuple(parts)
    if not parts:
        return TrueF()
    if len(parts) == 1:
        return parts[0]
    return And(parts)


def fOr(parts) -> Formula:
    parts = tuple(parts)
    if not parts:
        return FalseF()
    if len(parts) == 1:
        return parts[0]
    return Or(parts)


def fNot(f: Formula) -> Formula:
    if isinstance(f, Not):
        return f.body
    if isinstance(f, TrueF):
        return FalseF()
    if isinstance(f, FalseF):
        return TrueF()
    return Not(f)


def free_vars(f: Formula, bound: frozenset[int] = frozenset()) -> dict[int, Var]:
    """Free variables of f as an ordered dict vid -> Var."""
    out: dict[int, Var] = {}

    def go_term(t: Term, bound):
        if isinstance(t, Var):
            if t.vid not in bound:
                out.setdefault(t.vid, t)
        elif not t.ground:
            for a in t.args:
                go_term(a, bound)

    def go(f: Formula, bound):
        if isinstance(f, (TrueF, FalseF)):
            return
        if isinstance(f, Atom):
            go_term(f.term, bound)
        elif isinstance(f, Eq):
            go_term(f.lhs, bound)
            go_term(f.rhs, bound)
        elif isinstance(f, Not):
            go(f.body, bound)
        elif isinstance(f, (And, Or)):
            for p in f.parts:
                go(p, bound)
        elif isinstance(f, (Implies, Iff)):
            go(f.lhs, bound)
            go(f.rhs, bound)
        elif isinstance(f, (Forall, Exists)):
            go(f.body, bound | {v.vid for v in f.vars})
        else:
            raise TypeError(f)

    go(f, set(bound))
    return out


def subst_formula(subst: Subst, f: Formula) -> Formula:
    """Apply a substitution to the free variables of f (binders shadow)."""
    if not subst:
        return f
    if isinstance(f, (TrueF, FalseF)):
        return f
    if isinstance(f, Atom):
        return Atom(apply_subst(subst, f.term))
    if isinstance(f, Eq):
        return Eq(apply_subst(subst, f.lhs), apply_subst(subst, f.rhs))
    if isinstance(f, Not):
        return Not(subst_formula(subst, f.body))
    if isinstance(f, And):
        return And(tuple(subst_formula(subst, p) for p in f.parts))
    if isinstance(f, Or):
        return Or(tuple(subst_formula(subst, p) for p in f.parts))
    if isinstance(f, Implies):
        return Implies(subst_formula(subst, f.lhs), subst_formula(subst, f.rhs))
    if isinstance(f, Iff):
        return Iff(subst_formula(subst, f.lhs), subst_formula(subst, f.rhs))
    if isinstance(f, (Forall, Exists)):
        inner = {v: t for v, t in subst.items() if v not in {x.vid for x in f.vars}}
        body = subst_formula(inner, f.body)
        return type(f)(f.vars, body)
    raise TypeError(f)


def formula_key(f: Formula):
    """Structural key for deterministic ordering/deduplication of formulas."""
    if isinstance(f, TrueF):
        return ("true",)
    if isinstance(f, FalseF):
        return ("false",)
    if isinstance(f, Atom):
        return ("atom", term_key(f.term))
    if isinstance(f, Eq):
        return ("eq", term_key(f.lhs), term_key(f.rhs))
    if isinstance(f, Not):
        return ("not", formula_key(f.body))
    if isinstance(f, And):
        return ("and", tuple(formula_key(p) for p in f.parts))
    if isinstance(f, Or):
        return ("or", tuple(formula_key(p) for p in f.parts))
    if isinstance(f, Implies):
        return ("implies", formula_key(f.lhs), formula_key(f.rhs))
    if isinstance(f, Iff):
        return ("iff", formula_key(f.lhs), formula_key(f.rhs))
    if isinstance(f, Forall):
        return ("forall", tuple((v.vid, v.sort.name) for v in f.vars), formula_key(f.body))
    if isinstance(f, Exists):
        return ("exists", tuple((v.vid, v.sort.name) for v in f.vars), formula_key(f.body))
    raise TypeError(f)
