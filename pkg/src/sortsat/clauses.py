"""Literals and clauses.

A literal is a signed equation `s = t` / `s != t` or a signed predicate atom.
Atoms are kept distinct from equations but compare in the term ordering via
the usual `atom = $true` encoding. Clauses are literal multisets with a
derivation record; construction canonicalizes literal order and variable
naming so that alpha-equivalent clauses print identically.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ordering import Cmp, Precedence, lpo, multiset_cmp
from .terms import (
    TRUE, App, Subst, Term, Var, apply_subst, max_vid, term_key,
)

__all__ = ["Literal", "Clause", "Derivation", "canonical_literals", "clause_vars"]


@dataclass(frozen=True)
class Literal:
    positive: bool
    lhs: Term
    rhs: Term | None = None  # None => predicate atom in lhs

    @property
    def is_equation(self) -> bool:
        return self.rhs is not None

    @property
    def is_atom(self) -> bool:
        return self.rhs is None

    def negate(self) -> "Literal":
        return Literal(not self.positive, self.lhs, self.rhs)

    def terms(self) -> tuple[Term, Term]:
        """The pair compared by the literal ordering (atom = $true)."""
        return (self.lhs, self.rhs if self.rhs is not None else TRUE)

    def ms_terms(self) -> tuple[Term, ...]:
        s, t = self.terms()
        return (s, t) if self.positive else (s, s, t, t)

    def apply(self, subst: Subst) -> "Literal":
        if not subst:
            return self
        memo: dict = {}
        lhs = apply_subst(subst, self.lhs, memo)
        rhs = apply_subst(subst, self.rhs, memo) if self.rhs is not None else None
        return Literal(self.positive, lhs, rhs)

    def key(self):
        k = self.__dict__.get("_key")
        if k is None:
            if self.rhs is None:
                k = (0, self.positive, term_key(self.lhs))
            else:
                k = (1, self.positive, term_key(self.lhs), term_key(self.rhs))
            object.__setattr__(self, "_key", k)
        return k

    def anon_key(self):
        """Key with variables anonymized by per-literal first occurrence."""
        seen: dict[int, int] = {}

        def go(t: Term):
            if isinstance(t, Var):
                return ("v", seen.setdefault(t.vid, len(seen)))
            return ("f", t.fn.name, tuple(go(a) for a in t.args))

        if self.rhs is None:
            return (0, self.positive, go(self.lhs))
        return (1, self.positive, go(self.lhs), go(self.rhs))

    def __str__(self) -> str:
        if self.rhs is None:
            return _term_str(self.lhs) if self.positive else "~" + _term_str(self.lhs)
        op = " = " if self.positive else " != "
        return _term_str(self.lhs) + op + _term_str(self.rhs)


def _term_str(t: Term) -> str:
    if isinstance(t, Var):
        return f"X{t.vid}"
    if not t.args:
        return t.fn.name
    return f"{t.fn.name}({','.join(_term_str(a) for a in t.args)})"


def normalize_equation(lit: Literal) -> Literal:
    """Put equation sides in a deterministic structural order."""
    if lit.rhs is None:
        return lit
    if term_key(lit.lhs) < term_key(lit.rhs):
        return Literal(lit.positive, lit.rhs, lit.lhs)
    return lit


def canonical_literals(lits) -> tuple[Literal, ...]:
    """Dedupe, order deterministically and rename variables 0..n-1."""
    lits = [normalize_equation(l) for l in lits]
    # dedupe exact duplicates first (idempotency of disjunction)
    seen = set()
    uniq = []
    for l in lits:
        k = l.key()
        if k not in seen:
            seen.add(k)
            uniq.append(l)
    uniq.sort(key=lambda l: (l.anon_key(), l.key()))
    # rename variables in first-occurrence order
    mapping: dict[int, Var] = {}

    def rn(t: Term) -> Term:
        if isinstance(t, Var):
            v = mapping.get(t.vid)
            if v is None:
                v = Var(len(mapping), t.sort)
                mapping[t.vid] = v
            return v
        if t.ground:
            return t
        from .terms import app

        return app(t.fn, *(rn(a) for a in t.args))

    out = []
    for l in uniq:
        lhs = rn(l.lhs)
        rhs = rn(l.rhs) if l.rhs is not None else None
        out.append(Literal(l.positive, lhs, rhs))
    return tuple(out)


@dataclass(frozen=True)
class Derivation:
    rule: str
    premises: tuple[int, ...] = ()
    subst: tuple[tuple[str, str], ...] = ()  # printed unifier, var -> term text
    meta: tuple = ()  # rule-specific replay data


@dataclass(frozen=True)
class Clause:
    literals: tuple[Literal, ...]
    cid: int = -1
    derivation: Derivation = field(default_factory=lambda: Derivation("input"))
    goal: bool = False
    ind_depth: int = 0

    @property
    def is_empty(self) -> bool:
        return not self.literals

    @property
    def weight(self) -> int:
        w = 0
        for l in self.literals:
            w += l.lhs.weight + (l.rhs.weight if l.rhs is not None else 0)
        return w

    def key(self):
        return tuple(l.key() for l in self.literals)

    def apply(self, subst: Subst) -> tuple[Literal, ...]:
        return tuple(l.apply(subst) for l in self.literals)

    def __str__(self) -> str:
        if not self.literals:
            return "$false"
        return " | ".join(map(str, self.literals))

    def maximal_indices(self, prec: Precedence) -> list[int]:
        """Indices of literals not strictly below another literal."""
        cached = prec._max_cache.get(self.cid) if self.cid >= 0 else None
        if cached is not None:
            return cached
        lits = self.literals
        n = len(lits)
        out = []
        cmps = [l.ms_terms() for l in lits]

        def lit_cmp(i: int, j: int) -> Cmp:
            return multiset_cmp(cmps[i], cmps[j], lambda a, b: lpo(a, b, prec))

        for i in range(n):
            if any(lit_cmp(i, j) is Cmp.LESS for j in range(n) if j != i):
                continue
            out.append(i)
        if self.cid >= 0:
            prec._max_cache[self.cid] = out
        return out


def clause_vars(c: Clause) -> int:
    """1 + the largest variable id used in the clause (0 if ground)."""
    best = -1
    for l in c.literals:
        best = max(best, max_vid(l.lhs))
        if l.rhs is not None:
            best = max(best, max_vid(l.rhs))
    return best + 1
