"""Sorting-algorithm theory library.

Everything here is plain input-syntax text plus a thin layer that parses it
on demand: the list/nat datatypes, the linear order on elements, the
recursive programs (quicksort, mergesort, insertsort and their helpers),
the named lemma catalog, and the benchmark files with their manifest.

Text is the single source of truth: the shipped ``benchmarks/`` directory is
regenerated verbatim by :func:`generate_benchmarks`, and catalog formulas are
obtained by parsing the same text against the full library signature.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .errors import UnknownLemma, UnknownProgram
from .formulas import (
    And, Atom, Eq, Exists, FalseF, Forall, Formula, Iff, Implies, Not, Or,
    TrueF,
)
from .parser import parse_problem
from .problem import Problem
from .terms import App, Term, Var, app

__all__ = [
    "LemmaCatalogEntry", "BenchmarkSpec",
    "list_theory", "encode_program", "lemma", "catalog_ids", "catalog",
    "theory_problem", "parse_formula_text", "instantiate_generalized",
    "alpha_equivalent", "benchmark_ids", "benchmark", "benchmark_text",
    "manifest_text", "generate_benchmarks", "PROGRAMS",
]


# ---------------------------------------------------------------------------
# datatypes and the element order

SORT_DECLS = """\
(declare-sort a 0)
(declare-datatypes ((list 1) (nat 0))
  ((par (a) ((nil) (cons (head a) (tail (list a)))))
   ((zero) (succ (pred nat)))))"""

ORDER_AXIOMS = """\
(declare-fun leq (a a) Bool)
(assert (forall ((x a)) (leq x x)))
(assert (forall ((x a) (y a)) (=> (and (leq x y) (leq y x)) (= x y))))
(assert (forall ((x a) (y a) (z a)) (=> (and (leq x y) (leq y z)) (leq x z))))
(assert (forall ((x a) (y a)) (or (leq x y) (leq y x))))
(define-fun-rec lt ((x a) (y a)) Bool (and (leq x y) (not (= x y))))
(define-fun-rec geq ((x a) (y a)) Bool (leq y x))"""


def list_theory() -> tuple[str, str]:
    """Datatype declarations and the element-order block, as input text."""
    return SORT_DECLS, ORDER_AXIOMS


# ---------------------------------------------------------------------------
# recursive definitions

_DEF_TEXTS: dict[str, str] = {
    "append": """\
(define-fun-rec append ((xs (list a)) (ys (list a))) (list a)
  (match xs
    ((nil ys)
     ((cons x xt) (cons x (append xt ys))))))""",
    "filter_lt": """\
(define-fun-rec filter_lt ((x a) (ys (list a))) (list a)
  (match ys
    ((nil nil)
     ((cons y yt) (ite (lt y x)
                       (cons y (filter_lt x yt))
                       (filter_lt x yt))))))""",
    "filter_geq": """\
(define-fun-rec filter_geq ((x a) (ys (list a))) (list a)
  (match ys
    ((nil nil)
     ((cons y yt) (ite (geq y x)
                       (cons y (filter_geq x yt))
                       (filter_geq x yt))))))""",
    "filter_eq": """\
(define-fun-rec filter_eq ((x a) (ys (list a))) (list a)
  (match ys
    ((nil nil)
     ((cons y yt) (ite (= y x)
                       (cons y (filter_eq x yt))
                       (filter_eq x yt))))))""",
    "insert": """\
(define-fun-rec insert ((x a) (ys (list a))) (list a)
  (match ys
    ((nil (cons x nil))
     ((cons y yt) (ite (leq x y)
                       (cons x (cons y yt))
                       (cons y (insert x yt)))))))""",
    "merge": """\
(define-fun-rec merge ((xs (list a)) (ys (list a))) (list a)
  (match xs
    ((nil ys)
     ((cons x xt)
      (match ys
        ((nil (cons x xt))
         ((cons y yt) (ite (leq x y)
                           (cons x (merge xt (cons y yt)))
                           (cons y (merge (cons x xt) yt))))))))))""",
    "length": """\
(define-fun-rec length ((xs (list a))) nat
  (match xs
    ((nil zero)
     ((cons x xt) (succ (length xt))))))""",
    "half": """\
(define-fun-rec half ((n nat)) nat
  (match n
    ((zero zero)
     ((succ m)
      (match m
        ((zero zero)
         ((succ k) (succ (half k)))))))))""",
    "take": """\
(define-fun-rec take ((n nat) (xs (list a))) (list a)
  (match n
    ((zero nil)
     ((succ m)
      (match xs
        ((nil nil)
         ((cons x xt) (cons x (take m xt)))))))))""",
    "drop": """\
(define-fun-rec drop ((n nat) (xs (list a))) (list a)
  (match n
    ((zero xs)
     ((succ m)
      (match xs
        ((nil nil)
         ((cons x xt) (drop m xt))))))))""",
    "elemleq": """\
(define-fun-rec elemleq ((x a) (ys (list a))) Bool
  (match ys
    ((nil true)
     ((cons y yt) (and (leq x y) (elemleq x yt))))))""",
    "sorted": """\
(define-fun-rec sorted ((xs (list a))) Bool
  (match xs
    ((nil true)
     ((cons x xt) (and (elemleq x xt) (sorted xt))))))""",
    "listleq": """\
(define-fun-rec listleq ((xs (list a)) (ys (list a))) Bool
  (match xs
    ((nil true)
     ((cons x xt) (and (elemleq x ys) (listleq xt ys))))))""",
    "quicksort": """\
(define-fun-rec quicksort ((xs (list a))) (list a)
  (match xs
    ((nil nil)
     ((cons x xt) (append (quicksort (filter_lt x xt))
                          (cons x (quicksort (filter_geq x xt))))))))""",
    "mergesort": """\
(define-fun-rec mergesort ((xs (list a))) (list a)
  (match xs
    ((nil nil)
     ((cons x xt)
      (match xt
        ((nil (cons x nil))
         ((cons y yt)
          (let ((zs (cons x (cons y yt))))
            (merge (mergesort (take (half (length zs)) zs))
                   (mergesort (drop (half (length zs)) zs)))))))))))""",
    "insertsort": """\
(define-fun-rec insertsort ((xs (list a))) (list a)
  (match xs
    ((nil nil)
     ((cons x xt) (insert x (insertsort xt))))))""",
}

# Callees that are themselves recursive definitions (the order block with
# leq/lt/geq is always present and not tracked here).
_DEF_DEPS: dict[str, tuple[str, ...]] = {
    "append": (), "filter_lt": (), "filter_geq": (), "filter_eq": (),
    "insert": (), "merge": (), "length": (), "half": (), "take": (),
    "drop": (), "elemleq": (), "sorted": ("elemleq",),
    "listleq": ("elemleq",),
    "quicksort": ("append", "filter_lt", "filter_geq"),
    "mergesort": ("merge", "length", "half", "take", "drop"),
    "insertsort": ("insert",),
}

# Every callee precedes its callers; benchmark files emit definitions in
# this order so the frontend never sees a forward reference.
_DEF_ORDER = (
    "append", "filter_lt", "filter_geq", "filter_eq", "insert", "merge",
    "length", "half", "take", "drop", "elemleq", "sorted", "listleq",
    "quicksort", "mergesort", "insertsort",
)

PROGRAMS = ("quicksort", "mergesort", "insertsort", "support")

# Disjoint definition groups; their union is the whole function library,
# so any selection of programs can be concatenated into one input file.
_PROGRAM_DEFS: dict[str, tuple[str, ...]] = {
    "quicksort": ("append", "filter_lt", "filter_geq", "quicksort"),
    "mergesort": ("merge", "length", "half", "take", "drop", "mergesort"),
    "insertsort": ("insert", "insertsort"),
    "support": ("filter_eq", "elemleq", "sorted", "listleq"),
}


def encode_program(name: str) -> tuple[str, ...]:
    """Definition texts for one program group (see PROGRAMS)."""
    try:
        defs = _PROGRAM_DEFS[name]
    except KeyError:
        raise UnknownProgram(name) from None
    return tuple(_DEF_TEXTS[d] for d in defs)


# Uninterpreted placeholders for the generalized lemma templates.
_GENERALIZED_DECLS = """\
(declare-fun combine ((list a) (list a)) (list a))
(declare-fun partition_one ((list a)) (list a))
(declare-fun partition_other ((list a)) (list a))"""


def full_theory_text(generalized: bool = False) -> str:
    """The whole library as one input-file preamble (no conjecture)."""
    parts = [SORT_DECLS, ORDER_AXIOMS]
    parts.extend(_DEF_TEXTS[d] for d in _DEF_ORDER)
    if generalized:
        parts.append(_GENERALIZED_DECLS)
    return "\n".join(parts)


_THEORY_PROBLEM: Problem | None = None


def theory_problem() -> Problem:
    """A parsed problem containing every definition (trivial conjecture)."""
    global _THEORY_PROBLEM
    if _THEORY_PROBLEM is None:
        text = full_theory_text() + "\n(assert-theorem true)"
        _THEORY_PROBLEM = parse_problem(text, source="<theory>")
    return _THEORY_PROBLEM


def parse_formula_text(text: str, generalized: bool = False) -> Formula:
    """Parse one closed formula against the full library signature."""
    src = full_theory_text(generalized) + f"\n(assert-theorem {text})"
    return parse_problem(src, source="<formula>").conjecture


# ---------------------------------------------------------------------------
# lemma catalog


@dataclass(frozen=True)
class LemmaCatalogEntry:
    id: str
    formula: Formula
    text: str
    status: str  # "valid" | "intentionally-over-strong" | "template"
    benchmark: str | None  # property benchmark whose pool it belongs to
    description: str
    # For over-strong entries: the first falsifying assignment the oracle
    # reports at domain size 2, lists up to length 2 (name, shown value).
    counterexample: tuple[tuple[str, str], ...] | None = None


# id -> (text, status, benchmark, description[, counterexample])
_CATALOG_SPECS: dict[str, tuple] = {
    "QS-S-L1": (
        "(forall ((x a) (xs (list a)) (ys (list a)))"
        " (=> (and (sorted xs) (sorted ys) (elemleq x xs)"
        " (listleq ys (cons x xs)))"
        " (sorted (append ys (cons x xs)))))",
        "valid", "QS-S",
        "Appending a sorted list onto a pivot-led sorted list stays sorted "
        "when the pivot links the two parts."),
    "QS-S-L1-strong": (
        "(forall ((x a) (xs (list a)) (ys (list a)))"
        " (=> (and (sorted xs) (sorted ys))"
        " (sorted (append ys (cons x xs)))))",
        "intentionally-over-strong", "QS-S",
        "Over-strong variant that drops the linking bounds; false because "
        "the two sorted parts need not be ordered across the seam.",
        (("x", "1"), ("xs", "[]"), ("ys", "[2]"))),
    "QS-S-L2": (
        "(forall ((x a) (xs (list a)))"
        " (elemleq x (quicksort (filter_geq x xs))))",
        "valid", "QS-S",
        "The pivot bounds the sorted keep-not-less partition from below."),
    "QS-S-L3": (
        "(forall ((x a) (xs (list a)))"
        " (listleq (quicksort (filter_lt x xs))"
        " (cons x (quicksort (filter_geq x xs)))))",
        "valid", "QS-S",
        "The sorted keep-less partition lies below the pivot and the "
        "sorted keep-not-less partition."),
    "QS-S-L4": (
        "(forall ((x a) (xs (list a)))"
        " (=> (elemleq x xs) (elemleq x (quicksort xs))))",
        "valid", "QS-S",
        "A lower bound of a list is a lower bound of its sorted image."),
    "QS-S-L5": (
        "(forall ((xs (list a)) (ys (list a)))"
        " (=> (listleq ys xs) (listleq (quicksort ys) xs)))",
        "valid", "QS-S",
        "A list dominated by another stays dominated after sorting."),
    "QS-S-L6": (
        "(forall ((x a) (y a) (xs (list a)) (ys (list a)))"
        " (=> (and (leq y x) (elemleq y xs) (elemleq y ys))"
        " (elemleq y (append (cons x ys) xs))))",
        "valid", "QS-S",
        "A common lower bound of two lists and of an extra element bounds "
        "their concatenation."),
    "QS-S-L7": (
        "(forall ((xs (list a)) (ys (list a)) (zs (list a)))"
        " (=> (and (listleq ys xs) (listleq zs xs))"
        " (listleq (append ys zs) xs)))",
        "valid", "QS-S",
        "Domination by a list is preserved under concatenation."),
    "QS-PE-L1": (
        "(forall ((x a) (xs (list a)) (ys (list a)))"
        " (= (filter_eq x (append xs ys))"
        " (append (filter_eq x xs) (filter_eq x ys))))",
        "valid", "QS-PE",
        "Keeping the occurrences of one value commutes with concatenation."),
    "QS-PE-L2": (
        "(forall ((x a) (y a) (xs (list a)))"
        " (= (filter_eq x xs)"
        " (append (filter_eq x (filter_lt y xs))"
        " (filter_eq x (filter_geq y xs)))))",
        "valid", "QS-PE",
        "Splitting around a pivot and concatenating preserves the "
        "occurrences of every value."),
    "IS-S-L1": (
        "(forall ((x a) (xs (list a)))"
        " (=> (sorted xs) (sorted (insert x xs))))",
        "valid", "IS-S",
        "Ordered insertion preserves sortedness."),
    "IS-PE-L1": (
        "(forall ((x a) (y a) (ys (list a)))"
        " (= (filter_eq x (cons y ys)) (filter_eq x (insert y ys))))",
        "valid", "IS-PE",
        "Ordered insertion adds the same occurrences as prepending."),
    "MS-S-L1": (
        "(forall ((xs (list a)) (ys (list a)))"
        " (=> (and (sorted xs) (sorted ys)) (sorted (merge xs ys))))",
        "valid", "MS-S",
        "Merging two sorted lists yields a sorted list."),
    "MS-S-L2": (
        "(forall ((x a) (xs (list a)) (ys (list a)))"
        " (=> (and (elemleq x xs) (elemleq x ys))"
        " (elemleq x (merge xs ys))))",
        "valid", "MS-S",
        "A common lower bound of two lists bounds their merge."),
    "MS-PE-L1": (
        "(forall ((x a) (n nat) (xs (list a)))"
        " (= (filter_eq x xs)"
        " (append (filter_eq x (take n xs)) (filter_eq x (drop n xs)))))",
        "valid", "MS-PE",
        "Splitting a list at any position and concatenating preserves the "
        "occurrences of every value."),
    "MS-PE-L2": (
        "(forall ((x a) (xs (list a)) (ys (list a)))"
        " (= (filter_eq x (merge xs ys))"
        " (append (filter_eq x xs) (filter_eq x ys))))",
        "valid", "MS-PE",
        "Merging contributes the same occurrences as concatenating."),
    "MS-PE-L3": (
        "(forall ((x a) (xs (list a)))"
        " (= (filter_eq x xs)"
        " (append (filter_eq x (take (half (length xs)) xs))"
        " (filter_eq x (drop (half (length xs)) xs)))))",
        "valid", "MS-PE",
        "Splitting at the midpoint and concatenating preserves the "
        "occurrences of every value."),
    "GEN-S-COMBINE": (
        "(forall ((xs (list a)) (ys (list a)))"
        " (=> (and (sorted xs) (sorted ys)) (sorted (combine xs ys))))",
        "template", None,
        "Template: a combining function maps sorted inputs to a sorted "
        "output."),
    "GEN-PE-COMBINE": (
        "(forall ((x a) (xs (list a)) (ys (list a)))"
        " (= (filter_eq x (combine xs ys))"
        " (combine (filter_eq x xs) (filter_eq x ys))))",
        "template", None,
        "Template: a combining function commutes with keeping the "
        "occurrences of one value."),
    "GEN-PE-SPLIT": (
        "(forall ((x a) (xs (list a)))"
        " (= (filter_eq x xs)"
        " (combine (filter_eq x (partition_one xs))"
        " (filter_eq x (partition_other xs)))))",
        "template", None,
        "Template: combining complementary partitions preserves the "
        "occurrences of every value."),
}

_CATALOG: dict[str, LemmaCatalogEntry] | None = None


def _build_catalog() -> dict[str, LemmaCatalogEntry]:
    out: dict[str, LemmaCatalogEntry] = {}
    for lid, spec in _CATALOG_SPECS.items():
        text, status, bench, desc = spec[:4]
        cex = spec[4] if len(spec) > 4 else None
        f = parse_formula_text(text, generalized=(status == "template"))
        out[lid] = LemmaCatalogEntry(lid, f, text, status, bench, desc, cex)
    return out


def lemma(lid: str) -> LemmaCatalogEntry:
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _build_catalog()
    try:
        return _CATALOG[lid]
    except KeyError:
        raise UnknownLemma(lid) from None


def catalog_ids() -> tuple[str, ...]:
    return tuple(_CATALOG_SPECS)


def catalog() -> tuple[LemmaCatalogEntry, ...]:
    return tuple(lemma(lid) for lid in _CATALOG_SPECS)


# ---------------------------------------------------------------------------
# generalized-template instantiation and alpha-equivalence


def instantiate_generalized(lid: str, combine: str,
                            partitions: tuple[str, str] | None = None,
                            ) -> Formula:
    """Substitute concrete functions into a template lemma.

    ``combine`` replaces the binary placeholder. ``partitions`` replace the
    unary placeholders; when the concrete partition functions take an extra
    leading argument (a pivot element, a split position), one shared fresh
    variable of that sort is introduced and appended to the outer block of
    universally bound variables.
    """
    entry = lemma(lid)
    if entry.status != "template":
        raise UnknownLemma(f"{lid} is not a template")
    sig = theory_problem().sig
    target_combine = sig.get(combine)
    part_decls = None
    extra: list[Var] = []
    if partitions is not None:
        part_decls = (sig.get(partitions[0]), sig.get(partitions[1]))
        arities = {d.arity for d in part_decls}
        if arities == {2}:
            lead = {d.arg_sorts[0] for d in part_decls}
            if len(lead) != 1:
                raise UnknownLemma("partition functions disagree on the "
                                   "extra argument sort")
            extra.append(Var(_fresh_vid(entry.formula), lead.pop()))
        elif arities != {1}:
            raise UnknownLemma("partition functions must be unary or take "
                               "one extra leading argument")

    def go_term(t: Term) -> Term:
        if not isinstance(t, App):
            return t
        args = tuple(go_term(x) for x in t.args)
        name = t.fn.name
        if name == "combine":
            return app(target_combine, *args)
        if part_decls is not None and name in ("partition_one",
                                               "partition_other"):
            d = part_decls[0] if name == "partition_one" else part_decls[1]
            return app(d, *extra, *args) if d.arity == 2 else app(d, *args)
        return app(t.fn, *args)

    def go(f: Formula) -> Formula:
        if isinstance(f, (TrueF, FalseF)):
            return f
        if isinstance(f, Atom):
            return Atom(go_term(f.term))
        if isinstance(f, Eq):
            return Eq(go_term(f.lhs), go_term(f.rhs))
        if isinstance(f, Not):
            return Not(go(f.body))
        if isinstance(f, And):
            return And(tuple(go(p) for p in f.parts))
        if isinstance(f, Or):
            return Or(tuple(go(p) for p in f.parts))
        if isinstance(f, Implies):
            return Implies(go(f.lhs), go(f.rhs))
        if isinstance(f, Iff):
            return Iff(go(f.lhs), go(f.rhs))
        if isinstance(f, Forall):
            return Forall(f.vars, go(f.body))
        if isinstance(f, Exists):
            return Exists(f.vars, go(f.body))
        raise TypeError(f"unexpected formula {f!r}")

    result = go(entry.formula)
    if extra:
        if isinstance(result, Forall):
            result = Forall(result.vars + tuple(extra), result.body)
        else:
            result = Forall(tuple(extra), result)
    return result


def _fresh_vid(f: Formula) -> int:
    best = -1

    def go_term(t):
        nonlocal best
        if isinstance(t, Var):
            best = max(best, t.vid)
        elif isinstance(t, App):
            for x in t.args:
                go_term(x)

    def go(g: Formula):
        nonlocal best
        if isinstance(g, Atom):
            go_term(g.term)
        elif isinstance(g, Eq):
            go_term(g.lhs)
            go_term(g.rhs)
        elif isinstance(g, Not):
            go(g.body)
        elif isinstance(g, (And, Or)):
            for p in g.parts:
                go(p)
        elif isinstance(g, (Implies, Iff)):
            go(g.lhs)
            go(g.rhs)
        elif isinstance(g, (Forall, Exists)):
            for v in g.vars:
                best = max(best, v.vid)
            go(g.body)

    go(f)
    return best + 1


def alpha_equivalent(f: Formula, g: Formula) -> bool:
    """Equality up to renaming and reordering of the outer universal block.

    The leading runs of universal quantifiers are treated as unordered
    variable sets (their sort multisets must agree); below the prefix the
    structure must match exactly, with inner binders paired positionally.
    """
    fv, fb = _strip_forall(f)
    gv, gb = _strip_forall(g)
    if len(fv) != len(gv):
        return False
    if sorted(str(v.sort) for v in fv) != sorted(str(v.sort) for v in gv):
        return False
    m_fg: dict[int, int] = {}
    m_gf: dict[int, int] = {}
    free_f = {v.vid for v in fv}
    free_g = {v.vid for v in gv}

    def vars_match(a: Var, b: Var) -> bool:
        if a.sort != b.sort:
            return False
        bound_a = m_fg.get(a.vid)
        bound_b = m_gf.get(b.vid)
        if bound_a is None and bound_b is None:
            if a.vid in free_f and b.vid in free_g:
                m_fg[a.vid] = b.vid
                m_gf[b.vid] = a.vid
                return True
            return False
        return bound_a == b.vid and bound_b == a.vid

    def terms_match(s: Term, t: Term) -> bool:
        if isinstance(s, Var) and isinstance(t, Var):
            return vars_match(s, t)
        if isinstance(s, App) and isinstance(t, App):
            return (s.fn == t.fn and len(s.args) == len(t.args)
                    and all(terms_match(x, y)
                            for x, y in zip(s.args, t.args)))
        return False

    def match(a: Formula, b: Formula) -> bool:
        if type(a) is not type(b):
            return False
        if isinstance(a, (TrueF, FalseF)):
            return True
        if isinstance(a, Atom):
            return terms_match(a.term, b.term)
        if isinstance(a, Eq):
            return terms_match(a.lhs, b.lhs) and terms_match(a.rhs, b.rhs)
        if isinstance(a, Not):
            return match(a.body, b.body)
        if isinstance(a, (And, Or)):
            return (len(a.parts) == len(b.parts)
                    and all(match(p, q) for p, q in zip(a.parts, b.parts)))
        if isinstance(a, (Implies, Iff)):
            return match(a.lhs, b.lhs) and match(a.rhs, b.rhs)
        if isinstance(a, (Forall, Exists)):
            if len(a.vars) != len(b.vars):
                return False
            saved = []
            for v, w in zip(a.vars, b.vars):
                if v.sort != w.sort:
                    for x, y in saved:
                        _unbind(m_fg, m_gf, x, y)
                    return False
                saved.append((v.vid, w.vid,
                              m_fg.get(v.vid), m_gf.get(w.vid)))
                m_fg[v.vid] = w.vid
                m_gf[w.vid] = v.vid
            ok = match(a.body, b.body)
            for v_vid, w_vid, old_fg, old_gf in reversed(saved):
                _restore(m_fg, v_vid, old_fg)
                _restore(m_gf, w_vid, old_gf)
            return ok
        raise TypeError(f"unexpected formula {a!r}")

    return match(fb, gb)


def _strip_forall(f: Formula) -> tuple[tuple[Var, ...], Formula]:
    vs: list[Var] = []
    while isinstance(f, Forall):
        vs.extend(f.vars)
        f = f.body
    return tuple(vs), f


def _restore(m: dict, key: int, old) -> None:
    if old is None:
        m.pop(key, None)
    else:
        m[key] = old


def _unbind(m_fg: dict, m_gf: dict, x: int, y: int) -> None:
    m_fg.pop(x, None)
    m_gf.pop(y, None)


# ---------------------------------------------------------------------------
# benchmarks


@dataclass(frozen=True)
class BenchmarkSpec:
    id: str
    path: str  # relative to the benchmarks directory
    conjecture: str  # input-syntax formula text
    pool: tuple[str, ...]  # lemma ids available to the minimal-set search
    # Acceptable minimal lemma sets; None means the entry is informational
    # only (no reproducible set).
    expected: tuple[frozenset[str], ...] | None
    timeout: float


_PROPERTY_CONJECTURES = {
    "QS-S": "(forall ((xs (list a))) (sorted (quicksort xs)))",
    "MS-S": "(forall ((xs (list a))) (sorted (mergesort xs)))",
    "IS-S": "(forall ((xs (list a))) (sorted (insertsort xs)))",
    "QS-PE": "(forall ((x a) (xs (list a)))"
             " (= (filter_eq x xs) (filter_eq x (quicksort xs))))",
    "MS-PE": "(forall ((x a) (xs (list a)))"
             " (= (filter_eq x xs) (filter_eq x (mergesort xs))))",
    "IS-PE": "(forall ((x a) (xs (list a)))"
             " (= (filter_eq x xs) (filter_eq x (insertsort xs))))",
}

_QS_S_LEMMAS = ("QS-S-L1", "QS-S-L2", "QS-S-L3", "QS-S-L4", "QS-S-L5",
                "QS-S-L6", "QS-S-L7")


def _bench(bid: str, subdir: str, pool: tuple[str, ...],
           expected, timeout: float) -> BenchmarkSpec:
    conj = _PROPERTY_CONJECTURES.get(bid) or _CATALOG_SPECS[bid][0]
    if expected is not None:
        expected = tuple(frozenset(s) for s in expected)
    return BenchmarkSpec(bid, f"{subdir}/{bid}.smt2", conj, pool,
                         expected, timeout)


def _others(group: tuple[str, ...], bid: str) -> tuple[str, ...]:
    return tuple(x for x in group if x != bid)


_MS_PE_LEMMAS = ("MS-PE-L1", "MS-PE-L2", "MS-PE-L3")
_MS_S_LEMMAS = ("MS-S-L1", "MS-S-L2")

_BENCHMARKS: dict[str, BenchmarkSpec] = {
    b.id: b for b in [
        _bench("IS-PE", "is/permeq", ("IS-PE-L1",), ({"IS-PE-L1"},), 60),
        _bench("IS-PE-L1", "is/permeq", (), (set(),), 60),
        _bench("MS-PE", "ms/permeq", _MS_PE_LEMMAS,
               ({"MS-PE-L1", "MS-PE-L2"},), 60),
        _bench("MS-PE-L1", "ms/permeq", _others(_MS_PE_LEMMAS, "MS-PE-L1"),
               None, 300),
        _bench("MS-PE-L2", "ms/permeq", _others(_MS_PE_LEMMAS, "MS-PE-L2"),
               (set(),), 60),
        _bench("MS-PE-L3", "ms/permeq", _others(_MS_PE_LEMMAS, "MS-PE-L3"),
               (set(),), 300),
        _bench("QS-PE", "qs/permeq", ("QS-PE-L1", "QS-PE-L2"),
               ({"QS-PE-L1", "QS-PE-L2"},), 60),
        _bench("QS-PE-L1", "qs/permeq", ("QS-PE-L2",), (set(),), 60),
        _bench("QS-PE-L2", "qs/permeq", ("QS-PE-L1",), (set(),), 60),
        _bench("IS-S", "is/sortedness", ("IS-S-L1",), ({"IS-S-L1"},), 60),
        _bench("IS-S-L1", "is/sortedness", (), (set(),), 300),
        _bench("MS-S", "ms/sortedness", _MS_S_LEMMAS, (set(),), 60),
        _bench("MS-S-L1", "ms/sortedness", _others(_MS_S_LEMMAS, "MS-S-L1"),
               None, 300),
        _bench("MS-S-L2", "ms/sortedness", _others(_MS_S_LEMMAS, "MS-S-L2"),
               (set(),), 60),
        _bench("QS-S", "qs/sortedness", _QS_S_LEMMAS,
               ({"QS-S-L1", "QS-S-L2", "QS-S-L3"},
                {"QS-S-L1", "QS-S-L3", "QS-S-L4"}), 60),
        _bench("QS-S-L1", "qs/sortedness", _others(_QS_S_LEMMAS, "QS-S-L1"),
               (set(),), 300),
        _bench("QS-S-L2", "qs/sortedness", _others(_QS_S_LEMMAS, "QS-S-L2"),
               ({"QS-S-L4"},), 60),
        _bench("QS-S-L3", "qs/sortedness", _others(_QS_S_LEMMAS, "QS-S-L3"),
               ({"QS-S-L4", "QS-S-L5"},), 300),
        _bench("QS-S-L4", "qs/sortedness", _others(_QS_S_LEMMAS, "QS-S-L4"),
               ({"QS-S-L6"},), 300),
        _bench("QS-S-L5", "qs/sortedness", _others(_QS_S_LEMMAS, "QS-S-L5"),
               ({"QS-S-L7"},), 60),
        _bench("QS-S-L6", "qs/sortedness", _others(_QS_S_LEMMAS, "QS-S-L6"),
               (set(),), 60),
        _bench("QS-S-L7", "qs/sortedness", _others(_QS_S_LEMMAS, "QS-S-L7"),
               (set(),), 60),
    ]
}


def benchmark_ids() -> tuple[str, ...]:
    return tuple(_BENCHMARKS)


def benchmark(bid: str) -> BenchmarkSpec:
    try:
        return _BENCHMARKS[bid]
    except KeyError:
        raise UnknownLemma(f"unknown benchmark {bid}") from None


def _required_defs(texts: list[str]) -> list[str]:
    """Definitions mentioned in the given texts, closed under callees."""
    words = set()
    for t in texts:
        words.update(re.findall(r"[A-Za-z_][A-Za-z0-9_]*", t))
    need = {d for d in _DEF_TEXTS if d in words}
    changed = True
    while changed:
        changed = False
        for d in tuple(need):
            for dep in _DEF_DEPS[d]:
                if dep not in need:
                    need.add(dep)
                    changed = True
    return [d for d in _DEF_ORDER if d in need]


def benchmark_text(bid: str) -> str:
    """Full input-file content for one benchmark."""
    spec = benchmark(bid)
    texts = [spec.conjecture] + [_CATALOG_SPECS[p][0] for p in spec.pool]
    defs = _required_defs(texts)
    if bid in _PROPERTY_CONJECTURES:
        blurb = _property_blurb(bid)
    else:
        blurb = _CATALOG_SPECS[bid][3]
    parts = [f"; {bid}: {blurb}", "(set-logic UFDT)", SORT_DECLS,
             ORDER_AXIOMS]
    parts.extend(_DEF_TEXTS[d] for d in defs)
    parts.append(f"(assert-theorem {spec.conjecture})")
    parts.append("(check-sat)")
    return "\n".join(parts) + "\n"


def _property_blurb(bid: str) -> str:
    alg = {"QS": "quicksort", "MS": "mergesort", "IS": "insertsort"}
    name = alg[bid.split("-")[0]]
    if bid.endswith("-S"):
        return f"{name} produces a sorted list."
    return f"{name} preserves the occurrences of every value."


def _fmt_set(s: frozenset[str]) -> str:
    return "{" + ",".join(sorted(s)) + "}"


def manifest_text() -> str:
    lines = []
    for spec in _BENCHMARKS.values():
        pool = ",".join(spec.pool) if spec.pool else "-"
        if spec.expected is None:
            exp = "-"
        else:
            exp = ";".join(_fmt_set(s) for s in spec.expected)
        lines.append(f"benchmark {spec.id}; file {spec.path}; pool {pool}; "
                     f"expected {exp}; timeout {spec.timeout:g}")
    return "\n".join(lines) + "\n"


def generate_benchmarks(root) -> list[Path]:
    """Write every benchmark file plus manifest.txt under ``root``."""
    root = Path(root)
    written = []
    for bid, spec in _BENCHMARKS.items():
        path = root / spec.path
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(benchmark_text(bid), encoding="utf-8")
        written.append(path)
    manifest = root / "manifest.txt"
    manifest.write_text(manifest_text(), encoding="utf-8")
    written.append(manifest)
    return written
