"""Problem representation: signature, axioms, conjecture, definitions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .formulas import Formula, fAnd, fNot, Implies, Iff, Eq, Forall, free_vars
from .terms import Signature, Term, Var

__all__ = ["DefCase", "Definition", "Problem"]


@dataclass(frozen=True)
class DefCase:
    """One defining equation: guards => lhs = rhs (or <=> for predicates)."""

    lhs: Term                 # f applied to (possibly nested) constructor patterns
    guards: tuple[Formula, ...]
    rhs: object               # Term for function definitions, Formula for predicates

    @property
    def is_predicate_case(self) -> bool:
        return isinstance(self.rhs, Formula)


@dataclass
class Definition:
    name: str
    cases: list[DefCase]

    def as_formulas(self) -> list[Formula]:
        out = []
        for c in self.cases:
            if c.is_predicate_case:
                body = Iff(_atom(c.lhs), c.rhs)
            else:
                body = Eq(c.lhs, c.rhs)
            if c.guards:
                body = Implies(fAnd(c.guards), body)
            vs = _case_vars(c)
            out.append(Forall(vs, body) if vs else body)
        return out


def _atom(t: Term):
    from .formulas import Atom

    return Atom(t)


def _case_vars(c: DefCase) -> tuple[Var, ...]:
    seen: dict[int, Var] = {}
    seen.update(free_vars(Eq(c.lhs, c.lhs)))
    for g in c.guards:
        seen.update(free_vars(g))
    if isinstance(c.rhs, Formula):
        seen.update(free_vars(c.rhs))
    else:
        seen.update(free_vars(Eq(c.rhs, c.rhs)))
    return tuple(seen[k] for k in sorted(seen))


@dataclass
class Problem:
    """A parsed or programmatically built proving task."""

    sig: Signature
    axioms: list[tuple[Formula, str]] = field(default_factory=list)
    conjecture: Formula | None = None
    definitions: dict[str, Definition] = field(default_factory=dict)
    calls: dict[str, set[str]] = field(default_factory=dict)
    source: str = "<memory>"
    _vids: "itertools.count" = field(default_factory=itertools.count)

    def fresh_var(self, sort) -> Var:
        return Var(next(self._vids), sort)

    def add_axiom(self, f: Formula, label: str = "") -> None:
        self.axioms.append((f, label or f"axiom{len(self.axioms)}"))

    def compile_definitions(self) -> list[tuple[Formula, str]]:
        """Definitional equations/equivalences as universally closed formulas.

        `ite` right-hand sides were already split into guarded cases at
        definition-construction time, so each case yields one formula.
        """
        out = []
        for name, d in self.definitions.items():
            for i, f in enumerate(d.as_formulas()):
                out.append((f, f"def:{name}:{i}"))
        return out
