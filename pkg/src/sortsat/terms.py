"""Sorted first-order terms: sorts, signatures, variables, applications.

Terms are immutable and perfectly shared: `app()` is the single construction
entry point and hash-conses applications, so structural equality is usually a
pointer check. Correctness never depends on sharing (equality falls back to
structure); `set_interning(False)` disables the cache.

Variables are integer ids scoped per clause; substitutions are plain dicts
from variable id to term.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DuplicateSymbol, SortMismatch, UnknownSymbol

__all__ = [
    "Sort", "mk_sort", "sort_var", "BOOL", "ELEM", "NAT", "LIST_ELEM",
    "FuncDecl", "Signature", "Term", "Var", "App", "app", "const",
    "set_interning", "TRUE", "FALSE",
    "apply_subst", "compose", "unify", "match", "occurs_in",
    "subterms", "rename_offset", "max_vid", "term_key", "sort_of",
]


# ---------------------------------------------------------------------------
# sorts


@dataclass(frozen=True)
class Sort:
    """A sort: either a variable (is_var) or a constructor application."""

    name: str
    args: tuple["Sort", ...] = ()
    is_var: bool = False

    def __str__(self) -> str:
        if not self.args:
            return self.name
        return f"{self.name}({', '.join(map(str, self.args))})"


_sort_cache: dict[tuple, Sort] = {}


def mk_sort(name: str, *args: Sort) -> Sort:
    key = (name, args, False)
    s = _sort_cache.get(key)
    if s is None:
        s = Sort(name, args, False)
        _sort_cache[key] = s
    return s


def sort_var(name: str) -> Sort:
    key = (name, (), True)
    s = _sort_cache.get(key)
    if s is None:
        s = Sort(name, (), True)
        _sort_cache[key] = s
    return s


def subst_sort(s: Sort, binding: dict[str, Sort]) -> Sort:
    if s.is_var:
        return binding.get(s.name, s)
    if not s.args:
        return s
    return mk_sort(s.name, *(subst_sort(a, binding) for a in s.args))


BOOL = mk_sort("Bool")
ELEM = mk_sort("a")
NAT = mk_sort("nat")
LIST_ELEM = mk_sort("list", ELEM)


# ---------------------------------------------------------------------------
# signatures


@dataclass(frozen=True, eq=False)
class FuncDecl:
    """A function (or predicate) symbol with a ground monomorphic rank."""

    name: str
    arg_sorts: tuple[Sort, ...]
    result: Sort
    is_constructor: bool = False
    is_defined: bool = False
    is_skolem: bool = False
    is_selector: bool = False
    datatype: str | None = None  # for constructors/selectors
    selector_of: tuple[str, int] | None = None  # (constructor, arg index)

    @property
    def arity(self) -> int:
        return len(self.arg_sorts)

    @property
    def is_predicate(self) -> bool:
        return self.result is BOOL or self.result == BOOL

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return isinstance(other, FuncDecl) and self.name == other.name

    def __hash__(self) -> int:
        return hash(self.name)

    def __repr__(self) -> str:
        return f"FuncDecl({self.name})"


class Signature:
    """Symbol table: declarations, datatype constructor groups, counters."""

    def __init__(self):
        self.decls: dict[str, FuncDecl] = {}
        self.datatypes: dict[str, list[str]] = {}  # datatype name -> ctor names
        self._skolem_count = 0
        self._defpred_count = 0
        self.add(FuncDecl("$true", (), BOOL))
        self.add(FuncDecl("$false", (), BOOL))

    def add(self, decl: FuncDecl) -> FuncDecl:
        if decl.name in self.decls:
            raise DuplicateSymbol(decl.name)
        self.decls[decl.name] = decl
        if decl.is_constructor and decl.datatype:
            self.datatypes.setdefault(decl.datatype, []).append(decl.name)
        return decl

    def get(self, name: str) -> FuncDecl:
        try:
            return self.decls[name]
        except KeyError:
            raise UnknownSymbol(name) from None

    def __contains__(self, name: str) -> bool:
        return name in self.decls

    def constructors_of(self, sort: Sort) -> list[FuncDecl]:
        names = self.datatypes.get(sort.name, [])
        return [self.decls[n] for n in names]

    def fresh_skolem(self, sort: Sort, arg_sorts: tuple[Sort, ...] = ()) -> FuncDecl:
        while f"sk{self._skolem_count}" in self.decls:
            self._skolem_count += 1
        d = FuncDecl(f"sk{self._skolem_count}", arg_sorts, sort, is_skolem=True)
        self._skolem_count += 1
        return self.add(d)

    def fresh_defpred(self, arg_sorts: tuple[Sort, ...]) -> FuncDecl:
        while f"def{self._defpred_count}" in self.decls:
            self._defpred_count += 1
        d = FuncDecl(f"def{self._defpred_count}", arg_sorts, BOOL, is_defined=True)
        self._defpred_count += 1
        return self.add(d)


# ---------------------------------------------------------------------------
# terms


class Term:
    __slots__ = ()


class Var(Term):
    __slots__ = ("vid", "sort", "_hash")

    def __init__(self, vid: int, sort: Sort):
        object.__setattr__(self, "vid", vid)
        object.__setattr__(self, "sort", sort)
        object.__setattr__(self, "_hash", hash((vid, sort.name)))

    def __setattr__(self, *a):  # immutability guard
        raise AttributeError("Var is immutable")

    @property
    def ground(self) -> bool:
        return False

    @property
    def weight(self) -> int:
        return 1

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return isinstance(other, Var) and self.vid == other.vid and self.sort == other.sort

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"X{self.vid}"


class App(Term):
    __slots__ = ("fn", "args", "sort", "ground", "weight", "_hash", "_key")

    def __init__(self, fn: FuncDecl, args: tuple[Term, ...]):
        object.__setattr__(self, "fn", fn)
        object.__setattr__(self, "args", args)
        object.__setattr__(self, "sort", fn.result)
        object.__setattr__(self, "ground", all(a.ground for a in args))
        object.__setattr__(self, "weight", 1 + sum(a.weight for a in args))
        object.__setattr__(self, "_hash", hash((fn.name, args)))
        object.__setattr__(self, "_key", None)

    def __setattr__(self, *a):
        raise AttributeError("App is immutable")

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return (
            isinstance(other, App)
            and self._hash == other._hash
            and self.fn.name == other.fn.name
            and self.args == other.args
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if not self.args:
            return self.fn.name
        return f"{self.fn.name}({', '.join(map(repr, self.args))})"


_intern: dict[tuple, App] = {}
_interning = True


def set_interning(on: bool) -> None:
    """Toggle hash-consing (used by tests; semantics are unaffected)."""
    global _interning
    _interning = on
    if not on:
        _intern.clear()


def app(fn: FuncDecl, *args: Term) -> App:
    """The single App constructor: sort-checks and hash-conses."""
    if len(args) != fn.arity:
        raise SortMismatch(f"{fn.name} expects {fn.arity} arguments, got {len(args)}")
    for a, want in zip(args, fn.arg_sorts):
        if a.sort != want:
            raise SortMismatch(f"{fn.name}: argument of sort {a.sort}, expected {want}")
    if not _interning:
        return App(fn, args)
    # the declaration's sorts are part of the key: problems number their
    # skolems independently, so one name may carry different sorts
    key = (fn.name, fn.result, args)
    t = _intern.get(key)
    if t is None:
        t = App(fn, args)
        _intern[key] = t
    return t


def const(fn: FuncDecl) -> App:
    return app(fn)


_TRUE_DECL = FuncDecl("$true", (), BOOL)
_FALSE_DECL = FuncDecl("$false", (), BOOL)
TRUE = App(_TRUE_DECL, ())
FALSE = App(_FALSE_DECL, ())


def sort_of(t: Term, sig: Signature) -> Sort:
    """Recompute and validate the sort of `t` against `sig`."""
    if isinstance(t, Var):
        return t.sort
    decl = sig.get(t.fn.name)
    if len(t.args) != decl.arity:
        raise SortMismatch(f"{decl.name}: arity {decl.arity}, got {len(t.args)}")
    for a, want in zip(t.args, decl.arg_sorts):
        got = sort_of(a, sig)
        if got != want:
            raise SortMismatch(f"{decl.name}: argument of sort {got}, expected {want}")
    return decl.result


# ---------------------------------------------------------------------------
# substitutions

Subst = dict  # vid -> Term


def apply_subst(subst: Subst, t: Term, _memo: dict | None = None) -> Term:
    if not subst:
        return t
    if _memo is None:
        _memo = {}
    return _apply(subst, t, _memo)


def _apply(subst: Subst, t: Term, memo: dict) -> Term:
    if isinstance(t, Var):
        return subst.get(t.vid, t)
    if t.ground:
        return t
    r = memo.get(id(t))
    if r is not None:
        return r
    new_args = tuple(_apply(subst, a, memo) for a in t.args)
    r = t if new_args == t.args else app(t.fn, *new_args)
    memo[id(t)] = r
    return r


def compose(outer: Subst, inner: Subst) -> Subst:
    """Return s with s(t) == outer(inner(t))."""
    out = {v: apply_subst(outer, t) for v, t in inner.items()}
    for v, t in outer.items():
        if v not in out:
            out[v] = t
    return out


def occurs_in(vid: int, t: Term) -> bool:
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Var):
            if s.vid == vid:
                return True
        elif not s.ground:
            stack.extend(s.args)
    return False


def unify(s: Term, t: Term, subst: Subst | None = None) -> Subst | None:
    """Most general unifier of s and t (idempotent), or None.

    Performs the occurs check and only binds variables to terms of the same
    sort, so sorts are preserved.
    """
    subst = dict(subst) if subst else {}

    def walk(u: Term) -> Term:
        while isinstance(u, Var) and u.vid in subst:
            u = subst[u.vid]
        return u

    stack = [(s, t)]
    while stack:
        a, b = stack.pop()
        a = walk(a)
        b = walk(b)
        if a is b or a == b:
            continue
        if isinstance(a, Var):
            b2 = apply_subst(subst, b)
            if occurs_in(a.vid, b2):
                return None
            if a.sort != b2.sort:
                return None
            subst[a.vid] = b2
        elif isinstance(b, Var):
            stack.append((b, a))
        else:
            if a.fn.name != b.fn.name or len(a.args) != len(b.args):
                return None
            stack.extend(zip(a.args, b.args))
    # resolve to an idempotent substitution
    for v in list(subst):
        subst[v] = apply_subst(subst, subst[v])
    changed = True
    while changed:
        changed = False
        for v in list(subst):
            nt = apply_subst(subst, subst[v])
            if nt != subst[v]:
                subst[v] = nt
                changed = True
    return subst


def match(pattern: Term, target: Term, subst: Subst | None = None) -> Subst | None:
    """One-sided match: find s with s(pattern) == target. No occurs check."""
    subst = dict(subst) if subst else {}
    stack = [(pattern, target)]
    while stack:
        p, t = stack.pop()
        if isinstance(p, Var):
            bound = subst.get(p.vid)
            if bound is None:
                if p.sort != t.sort:
                    return None
                subst[p.vid] = t
            elif bound != t:
                return None
        else:
            if isinstance(t, Var) or p.fn.name != t.fn.name:
                return None
            stack.extend(zip(p.args, t.args))
    return subst


# ---------------------------------------------------------------------------
# traversal helpers


def subterms(t: Term):
    """Yield every subterm of t, preorder (t itself first)."""
    stack = [t]
    while stack:
        s = stack.pop()
        yield s
        if isinstance(s, App):
            stack.extend(reversed(s.args))


def max_vid(t: Term) -> int:
    """Largest variable id in t, or -1 if ground."""
    best = -1
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Var):
            if s.vid > best:
                best = s.vid
        elif not s.ground:
            stack.extend(s.args)
    return best


def rename_offset(t: Term, offset: int) -> Term:
    if offset == 0 or t.ground:
        return t
    if isinstance(t, Var):
        return Var(t.vid + offset, t.sort)
    return app(t.fn, *(rename_offset(a, offset) for a in t.args))


def term_key(t: Term):
    """A total, deterministic structural key (variables compare by id)."""
    if isinstance(t, Var):
        return (0, t.vid, t.sort.name)
    k = t._key
    if k is None:
        k = (1, t.fn.name, tuple(term_key(a) for a in t.args))
        object.__setattr__(t, "_key", k)
    return k
