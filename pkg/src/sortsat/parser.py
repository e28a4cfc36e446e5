"""Frontend for the SMT-LIB 2.6 subset used by the benchmark files.

Supported commands: set-logic/set-info/set-option (ignored), declare-sort,
declare-datatypes (with ``par``), declare-fun, declare-const, define-fun-rec,
define-funs-rec, assert, assert-theorem (extension: marks the conjecture),
check-sat/exit (ignored). Terms and formulas: forall, exists, not, and, or,
=>, =, ite, let, match with constructor patterns; ``;`` comments and
``|quoted symbols|``.

Parametric (``par``) datatype declarations are instantiated at the single
opaque ground sort ``a``, keeping the proving kernel monomorphic. Recursive
definition bodies are case-expanded on the way in: every ``match`` refines
the defining equation's left-hand side and every ``ite`` splits the case in
two under complementary guards, producing a list of guarded equations per
function (see problem.DefCase). A ``match`` may only occur at the root of a
definition body or of a match-case body, never under a connective or inside
a term argument; the theory library respects this and anything else is
rejected with a clear error.

If no ``assert-theorem`` is present, a final ``(assert (not F))`` is taken
as the conjecture ``F`` (and removed from the axioms).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    InputSyntaxError, MultipleConjectures, NoConjecture,
    NonConstructorPattern, SortError, UnboundVariable, UnknownSymbol,
)
from .formulas import (
    And, Atom, Eq, Exists, FalseF, Forall, Formula, Iff, Implies, Not, Or,
    TrueF, fAnd, fNot, fOr, subst_formula,
)
from .problem import DefCase, Definition, Problem
from .terms import (
    BOOL, ELEM, App, FuncDecl, Signature, Sort, Subst, Term, Var, app,
    apply_subst, mk_sort,
)

__all__ = ["parse_problem", "parse_problem_file"]


# ---------------------------------------------------------------------------
# s-expression reader


@dataclass(frozen=True)
class SAtom:
    text: str
    line: int
    col: int


class SList(list):
    """A parenthesized group; remembers where it started for error messages."""

    def __init__(self, items, line=0, col=0):
        super().__init__(items)
        self.line = line
        self.col = col


def _tokenize(text: str):
    line, col = 1, 0
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 0
            i += 1
        elif ch in " \t\r":
            col += 1
            i += 1
        elif ch == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif ch in "()":
            yield (ch, line, col)
            col += 1
            i += 1
        elif ch == "|":
            j = text.find("|", i + 1)
            if j < 0:
                raise InputSyntaxError("unterminated |quoted symbol|", line, col)
            yield (text[i + 1:j], line, col)
            col += j - i + 1
            i = j + 1
        else:
            j = i
            while j < n and text[j] not in " \t\r\n();":
                j += 1
            yield (text[i:j], line, col)
            col += j - i
            i = j


def _read_sexprs(text: str) -> list:
    out: list = []
    stack: list[SList] = []
    for tok, line, col in _tokenize(text):
        if tok == "(":
            lst = SList([], line, col)
            (stack[-1] if stack else out).append(lst)
            stack.append(lst)
        elif tok == ")":
            if not stack:
                raise InputSyntaxError("unbalanced ')'", line, col)
            stack.pop()
        else:
            (stack[-1] if stack else out).append(SAtom(tok, line, col))
    if stack:
        raise InputSyntaxError("unbalanced '(' (missing ')')",
                               stack[-1].line, stack[-1].col)
    return out


def _err(node, msg: str) -> InputSyntaxError:
    return InputSyntaxError(msg, getattr(node, "line", 0), getattr(node, "col", 0))


# ---------------------------------------------------------------------------
# definition-body trees (terms/formulas plus ite and match, pre-expansion)


@dataclass(frozen=True)
class IteExpr:
    cond: Formula
    then: object
    els: object


@dataclass(frozen=True)
class MatchExpr:
    scrutinee: Var
    cases: tuple  # of (FuncDecl constructor, tuple[Var, ...], body)


class _Parser:
    def __init__(self, text: str, source: str = "<input>"):
        self.text = text
        self.problem = Problem(Signature(), source=source)
        self.sig = self.problem.sig
        self.declared_sorts: dict[str, int] = {"Bool": 0}
        self._last_assert: tuple[Formula, str] | None = None

    # ----- sorts -----

    def parse_sort(self, node, par_env: dict[str, Sort]) -> Sort:
        if isinstance(node, SAtom):
            name = node.text
            if name in par_env:
                return par_env[name]
            if name == "Bool":
                return BOOL
            arity = self.declared_sorts.get(name)
            if arity is None:
                raise _err(node, f"unknown sort {name}")
            if arity != 0:
                raise _err(node, f"sort {name} expects {arity} argument(s)")
            return mk_sort(name)
        if not node or not isinstance(node[0], SAtom):
            raise _err(node, "malformed sort")
        name = node[0].text
        arity = self.declared_sorts.get(name)
        if arity is None:
            raise _err(node, f"unknown sort {name}")
        args = [self.parse_sort(a, par_env) for a in node[1:]]
        if len(args) != arity:
            raise _err(node, f"sort {name} expects {arity} argument(s)")
        return mk_sort(name, *args)

    # ----- command dispatch -----

    def run(self) -> Problem:
        for node in _read_sexprs(self.text):
            if not isinstance(node, SList) or not node or not isinstance(node[0], SAtom):
                raise _err(node, "expected a command")
            self.command(node)
        if self.problem.conjecture is None:
            if self._last_assert is not None and isinstance(self._last_assert[0], Not):
                f, label = self._last_assert
                self.problem.conjecture = f.body
                self.problem.axioms = [
                    (g, lbl) for (g, lbl) in self.problem.axioms if lbl != label
                ]
            else:
                raise NoConjecture(self.problem.source)
        return self.problem

    def command(self, node: SList) -> None:
        head = node[0].text
        if head in ("set-logic", "set-info", "set-option", "check-sat", "exit"):
            return
        if head == "declare-sort":
            if len(node) != 3 or not isinstance(node[1], SAtom):
                raise _err(node, "declare-sort expects a name and an arity")
            name = node[1].text
            if name in self.declared_sorts:
                raise _err(node, f"sort {name} already declared")
            self.declared_sorts[name] = int(node[2].text)
            return
        if head == "declare-datatypes":
            self.declare_datatypes(node)
            return
        if head == "declare-fun":
            if len(node) != 4 or not isinstance(node[1], SAtom) or not isinstance(node[2], SList):
                raise _err(node, "declare-fun expects a name, argument sorts, and a result sort")
            args = tuple(self.parse_sort(s, {}) for s in node[2])
            self.sig.add(FuncDecl(node[1].text, args, self.parse_sort(node[3], {})))
            return
        if head == "declare-const":
            if len(node) != 3 or not isinstance(node[1], SAtom):
                raise _err(node, "declare-const expects a name and a sort")
            self.sig.add(FuncDecl(node[1].text, (), self.parse_sort(node[2], {})))
            return
        if head == "define-fun-rec":
            if len(node) != 5:
                raise _err(node, "define-fun-rec expects name, parameters, sort, body")
            self.define_funs([node[1:]])
            return
        if head == "define-funs-rec":
            if len(node) != 3:
                raise _err(node, "define-funs-rec expects declarations and bodies")
            decls, bodies = node[1], node[2]
            if len(decls) != len(bodies):
                raise _err(node, "define-funs-rec: declaration/body count mismatch")
            self.define_funs([list(d) + [b] for d, b in zip(decls, bodies)])
            return
        if head in ("assert", "assert-theorem"):
            if len(node) != 2:
                raise _err(node, f"{head} expects exactly one formula")
            f = self.parse_formula(node[1], {}, {})
            if head == "assert-theorem":
                if self.problem.conjecture is not None:
                    raise MultipleConjectures(self.problem.source)
                self.problem.conjecture = f
            else:
                label = f"assert{len(self.problem.axioms)}"
                self.problem.add_axiom(f, label)
                self._last_assert = (f, label)
            return
        raise _err(node, f"unknown command {head}")

    def declare_datatypes(self, node: SList) -> None:
        if len(node) != 3:
            raise _err(node, "declare-datatypes expects two parenthesized lists")
        sort_decls, bodies = node[1], node[2]
        if len(sort_decls) != len(bodies):
            raise _err(node, "declare-datatypes: arity list and body list differ")
        for sd in sort_decls:
            if len(sd) != 2 or not isinstance(sd[0], SAtom):
                raise _err(sd, "malformed datatype arity entry")
            name = sd[0].text
            if name in self.declared_sorts:
                raise _err(sd, f"sort {name} already declared")
            self.declared_sorts[name] = int(sd[1].text)
        # opaque element sort: instantiation target for `par` parameters
        self.declared_sorts.setdefault("a", 0)
        for sd, body in zip(sort_decls, bodies):
            name, arity = sd[0].text, int(sd[1].text)
            par_env: dict[str, Sort] = {}
            ctors = body
            if body and isinstance(body[0], SAtom) and body[0].text == "par":
                if len(body) != 3:
                    raise _err(body, "malformed par declaration")
                for pv in body[1]:
                    par_env[pv.text] = ELEM
                ctors = body[2]
            if len(par_env) != arity:
                raise _err(body, f"datatype {name}: expected {arity} parameter(s)")
            dt_sort = mk_sort(name, *([ELEM] * arity))
            for ctor in ctors:
                if not ctor or not isinstance(ctor[0], SAtom):
                    raise _err(ctor, "malformed constructor declaration")
                cname = ctor[0].text
                selectors = []
                for sel in ctor[1:]:
                    if len(sel) != 2 or not isinstance(sel[0], SAtom):
                        raise _err(sel, "malformed selector declaration")
                    selectors.append((sel[0].text, self.parse_sort(sel[1], par_env)))
                self.sig.add(FuncDecl(cname, tuple(s for _, s in selectors), dt_sort,
                                      is_constructor=True, datatype=name))
                for i, (sel_name, sel_sort) in enumerate(selectors):
                    self.sig.add(FuncDecl(sel_name, (dt_sort,), sel_sort,
                                          is_selector=True, datatype=name,
                                          selector_of=(cname, i)))

    # ----- recursive definitions -----

    def define_funs(self, defns: list) -> None:
        """Register all signatures first (mutual recursion), then bodies."""
        headers = []
        for d in defns:
            if len(d) != 4 or not isinstance(d[0], SAtom) or not isinstance(d[1], SList):
                raise _err(d[0] if d else SAtom("", 0, 0), "malformed definition")
            name = d[0].text
            params = []
            for p in d[1]:
                if len(p) != 2 or not isinstance(p[0], SAtom):
                    raise _err(p, "malformed parameter")
                params.append((p[0].text, self.parse_sort(p[1], {})))
            ret = self.parse_sort(d[2], {})
            self.sig.add(FuncDecl(name, tuple(s for _, s in params), ret,
                                  is_defined=True))
            headers.append((name, params, ret, d[3]))
        for name, params, ret, body_node in headers:
            self.compile_definition(name, params, ret, body_node)

    def compile_definition(self, name, params, ret, body_node) -> None:
        decl = self.sig.get(name)
        env: dict[str, Var] = {}
        pvars = []
        for pname, psort in params:
            if pname in env:
                raise _err(body_node, f"duplicate parameter {pname}")
            v = self.problem.fresh_var(psort)
            env[pname] = v
            pvars.append(v)
        lhs = app(decl, *pvars)
        if ret == BOOL:
            body = self.parse_pred_body(body_node, env)
        else:
            body = self.parse_fun_body(body_node, env)
        cases: list[DefCase] = []
        self._expand_cases(lhs, (), body, cases)
        self.problem.definitions[name] = Definition(name, cases)
        calls: set[str] = set()
        for c in cases:
            calls |= _case_symbols(c)
        calls.discard(name)
        self.problem.calls[name] = calls

    def parse_fun_body(self, node, env: dict[str, Var]):
        """Function definition body: a term with ite/match allowed at the root."""
        if isinstance(node, SList) and node and isinstance(node[0], SAtom):
            head = node[0].text
            if head == "ite":
                if len(node) != 4:
                    raise _err(node, "ite expects three arguments")
                return IteExpr(self.parse_formula(node[1], env, {}),
                               self.parse_fun_body(node[2], env),
                               self.parse_fun_body(node[3], env))
            if head == "match":
                return self.parse_match(node, env, self.parse_fun_body)
        return self.parse_term(node, env, {})

    def parse_pred_body(self, node, env: dict[str, Var]):
        """Predicate definition body: a formula with ite/match at the root."""
        if isinstance(node, SList) and node and isinstance(node[0], SAtom):
            head = node[0].text
            if head == "ite":
                if len(node) != 4:
                    raise _err(node, "ite expects three arguments")
                return IteExpr(self.parse_formula(node[1], env, {}),
                               self.parse_pred_body(node[2], env),
                               self.parse_pred_body(node[3], env))
            if head == "match":
                return self.parse_match(node, env, self.parse_pred_body)
        return self.parse_formula(node, env, {})

    def parse_match(self, node, env, sub_parser) -> MatchExpr:
        if len(node) != 3 or not isinstance(node[2], SList):
            raise _err(node, "match expects a scrutinee and a case list")
        scrut = self.parse_term(node[1], env, {})
        if not isinstance(scrut, Var):
            raise NonConstructorPattern(
                f"{node.line}:{node.col}: match scrutinee must be a variable")
        cases = []
        for c in node[2]:
            if len(c) != 2:
                raise _err(c, "malformed match case")
            pat, body_node = c[0], c[1]
            if isinstance(pat, SAtom):
                cname, argnames = pat.text, []
            elif pat and isinstance(pat[0], SAtom):
                cname, argnames = pat[0].text, [a.text for a in pat[1:]]
            else:
                raise _err(pat, "malformed pattern")
            if cname not in self.sig or not self.sig.get(cname).is_constructor:
                raise NonConstructorPattern(
                    f"pattern head {cname} is not a constructor")
            cd = self.sig.get(cname)
            if cd.result != scrut.sort:
                raise SortError(
                    f"pattern {cname} : {cd.result} cannot match {scrut.sort}")
            if len(argnames) != cd.arity:
                raise NonConstructorPattern(f"pattern {cname} expects {cd.arity} "
                                            f"argument(s), got {len(argnames)}")
            cvars = tuple(self.problem.fresh_var(s) for s in cd.arg_sorts)
            new_env = dict(env)
            for an, cv in zip(argnames, cvars):
                new_env[an] = cv
            cases.append((cd, cvars, sub_parser(body_node, new_env)))
        if not cases:
            raise _err(node, "match needs at least one case")
        return MatchExpr(scrut, tuple(cases))

    def _expand_cases(self, lhs: Term, guards: tuple, body, out: list) -> None:
        if isinstance(body, MatchExpr):
            for ctor, cvars, sub in body.cases:
                sigma = {body.scrutinee.vid: app(ctor, *cvars)}
                self._expand_cases(apply_subst(sigma, lhs),
                                   tuple(subst_formula(sigma, g) for g in guards),
                                   _subst_body(sigma, sub), out)
            return
        if isinstance(body, IteExpr):
            self._expand_cases(lhs, guards + (body.cond,), body.then, out)
            self._expand_cases(lhs, guards + (fNot(body.cond),), body.els, out)
            return
        out.append(DefCase(lhs, guards, body))

    # ----- terms and formulas -----

    def parse_term(self, node, env: dict[str, Var], lets: dict[str, Term]) -> Term:
        if isinstance(node, SAtom):
            v = env.get(node.text)
            if v is not None:
                return v
            if node.text in lets:
                return lets[node.text]
            if node.text in self.sig:
                d = self.sig.get(node.text)
                if d.arity != 0:
                    raise _err(node, f"{node.text} expects {d.arity} argument(s)")
                return app(d)
            raise UnboundVariable(f"{node.line}:{node.col}: {node.text}")
        if not node or not isinstance(node[0], SAtom):
            raise _err(node, "malformed term")
        head = node[0].text
        if head == "let":
            new_lets = dict(lets)
            for b in node[1]:
                new_lets[b[0].text] = self.parse_term(b[1], env, lets)
            return self.parse_term(node[2], env, new_lets)
        if head in ("forall", "exists", "not", "and", "or", "=>", "=", "ite", "match"):
            raise _err(node, f"{head} is not allowed inside a term argument")
        if head not in self.sig:
            raise UnknownSymbol(f"{node[0].line}:{node[0].col}: {head}")
        d = self.sig.get(head)
        args = [self.parse_term(a, env, lets) for a in node[1:]]
        try:
            return app(d, *args)
        except Exception as e:
            raise SortError(f"{node.line}:{node.col}: {e}") from None

    def parse_formula(self, node, env: dict[str, Var], lets: dict) -> Formula:
        if isinstance(node, SAtom):
            if node.text == "true":
                return TrueF()
            if node.text == "false":
                return FalseF()
            t = self.parse_term(node, env, lets)
            if t.sort != BOOL:
                raise SortError(f"{node.line}:{node.col}: expected Bool, got {t.sort}")
            return Atom(t)
        if not node or not isinstance(node[0], SAtom):
            raise _err(node, "malformed formula")
        head = node[0].text
        if head in ("forall", "exists"):
            if len(node) != 3 or not isinstance(node[1], SList):
                raise _err(node, f"{head} expects bindings and a body")
            new_env = dict(env)
            vs = []
            for b in node[1]:
                if len(b) != 2 or not isinstance(b[0], SAtom):
                    raise _err(b, "malformed binding")
                v = self.problem.fresh_var(self.parse_sort(b[1], {}))
                new_env[b[0].text] = v
                vs.append(v)
            body = self.parse_formula(node[2], new_env, lets)
            return (Forall if head == "forall" else Exists)(tuple(vs), body)
        if head == "not":
            if len(node) != 2:
                raise _err(node, "not expects one argument")
            return fNot(self.parse_formula(node[1], env, lets))
        if head == "and":
            return fAnd(self.parse_formula(a, env, lets) for a in node[1:])
        if head == "or":
            return fOr(self.parse_formula(a, env, lets) for a in node[1:])
        if head == "=>":
            if len(node) < 3:
                raise _err(node, "=> expects at least two arguments")
            parts = [self.parse_formula(a, env, lets) for a in node[1:]]
            f = parts[-1]
            for p in reversed(parts[:-1]):
                f = Implies(p, f)
            return f
        if head == "=":
            if len(node) != 3:
                raise _err(node, "= expects exactly two arguments")
            if self._bool_position(node[1], env) or self._bool_position(node[2], env):
                return Iff(self.parse_formula(node[1], env, lets),
                           self.parse_formula(node[2], env, lets))
            lhs = self.parse_term(node[1], env, lets)
            rhs = self.parse_term(node[2], env, lets)
            if lhs.sort != rhs.sort:
                raise SortError(f"{node.line}:{node.col}: equation between "
                                f"sorts {lhs.sort} and {rhs.sort}")
            return Eq(lhs, rhs)
        if head == "ite":
            if len(node) != 4:
                raise _err(node, "ite expects three arguments")
            c = self.parse_formula(node[1], env, lets)
            return fAnd([Implies(c, self.parse_formula(node[2], env, lets)),
                         Implies(fNot(c), self.parse_formula(node[3], env, lets))])
        if head == "match":
            raise _err(node, "match is only supported at the root of a "
                             "definition or match-case body")
        if head == "let":
            new_lets = dict(lets)
            for b in node[1]:
                new_lets[b[0].text] = self.parse_term(b[1], env, lets)
            return self.parse_formula(node[2], env, new_lets)
        t = self.parse_term(node, env, lets)
        if t.sort != BOOL:
            raise SortError(f"{node.line}:{node.col}: expected Bool, got {t.sort}")
        return Atom(t)

    def _bool_position(self, node, env) -> bool:
        """Does this node denote a Bool (so `=` means `iff`)?"""
        if isinstance(node, SAtom):
            if node.text in ("true", "false"):
                return True
            v = env.get(node.text)
            if v is not None:
                return v.sort == BOOL
            return node.text in self.sig and self.sig.get(node.text).result == BOOL
        if node and isinstance(node[0], SAtom):
            h = node[0].text
            if h in ("forall", "exists", "not", "and", "or", "=>", "=", "ite"):
                return True
            return h in self.sig and self.sig.get(h).result == BOOL
        return False


def _subst_body(sigma: Subst, body):
    """Substitute into a pre-expansion definition body tree."""
    if isinstance(body, IteExpr):
        return IteExpr(subst_formula(sigma, body.cond),
                       _subst_body(sigma, body.then), _subst_body(sigma, body.els))
    if isinstance(body, MatchExpr):
        scrut = apply_subst(sigma, body.scrutinee)
        if not isinstance(scrut, Var):
            raise NonConstructorPattern(
                "match scrutinee was already refined by an enclosing pattern")
        return MatchExpr(scrut, tuple((c, vs, _subst_body(sigma, b))
                                      for c, vs, b in body.cases))
    if isinstance(body, Formula):
        return subst_formula(sigma, body)
    return apply_subst(sigma, body)


def _case_symbols(c: DefCase) -> set[str]:
    """Function/predicate symbols appearing on the right side of a case."""
    out: set[str] = set()

    def go_term(t):
        if isinstance(t, App):
            out.add(t.fn.name)
            for a in t.args:
                go_term(a)

    def go_formula(f: Formula):
        if isinstance(f, Atom):
            go_term(f.term)
        elif isinstance(f, Eq):
            go_term(f.lhs)
            go_term(f.rhs)
        elif isinstance(f, Not):
            go_formula(f.body)
        elif isinstance(f, (And, Or)):
            for p in f.parts:
                go_formula(p)
        elif isinstance(f, (Implies, Iff)):
            go_formula(f.lhs)
            go_formula(f.rhs)
        elif isinstance(f, (Forall, Exists)):
            go_formula(f.body)

    for g in c.guards:
        go_formula(g)
    if isinstance(c.rhs, Formula):
        go_formula(c.rhs)
    else:
        go_term(c.rhs)
    return out


def parse_problem(text: str, source: str = "<input>") -> Problem:
    """Parse SMT-LIB subset text into a Problem. Raises on malformed input."""
    return _Parser(text, source).run()


def parse_problem_file(path) -> Problem:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_problem(fh.read(), source=str(path))
