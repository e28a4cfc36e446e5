"""Inference and simplification rules of the superposition calculus.

Generating rules (superposition, equality resolution, equality factoring, and
binary resolution/factoring for predicate atoms) return lists of derived
clauses whose derivation records name the rule, the premise ids and the
unifier used.  Simplifying rules (demodulation, definition unfolding, unit
subsumption resolution, constructor injectivity/distinctness) return a
replacement clause, a tautology verdict, or None when nothing applies.

All functions are pure — premises are never mutated — and deterministic: the
same premises always yield the same conclusions in the same order, which the
proof printer relies on.
"""

from __future__ import annotations

from .clauses import (
    Clause, Derivation, Literal, _term_str, canonical_literals, clause_vars,
    normalize_equation,
)
from .ordering import Cmp, Precedence, lpo, multiset_cmp
from .terms import (
    App, Subst, Term, Var, app, apply_subst, match, rename_offset, term_key,
    unify,
)

__all__ = [
    "TAUTOLOGY",
    "InferenceResult",
    "DemodulationIndex",
    "UnfoldIndex",
    "eligible_indices",
    "superposition",
    "equality_resolution",
    "equality_factoring",
    "resolution",
    "factoring",
    "demodulate",
    "unfold",
    "unfold_superpose",
    "subsumes",
    "subsumption_resolution",
    "datatype_simplify",
]

# A generating rule's result: derived clauses, each carrying a derivation
# record that names the rule, the premise ids and the printed unifier.
InferenceResult = list


class _Tautology:
    """Verdict for clauses that hold in every interpretation."""

    def __repr__(self) -> str:
        return "TAUTOLOGY"


TAUTOLOGY = _Tautology()

# Rewriting in one clause is capped as a guard against definition sets that
# fail the constructor-consuming termination argument; the caps are far above
# anything the shipped theory needs (fully evaluating a sorted call on a
# five-element list stays in the hundreds of steps).
_MAX_REWRITES = 400
_MAX_UNFOLDS = 2000


# ---------------------------------------------------------------------------
# small helpers


def _rename_lit(lit: Literal, offset: int) -> Literal:
    if offset == 0:
        return lit
    lhs = rename_offset(lit.lhs, offset)
    rhs = rename_offset(lit.rhs, offset) if lit.rhs is not None else None
    return Literal(lit.positive, lhs, rhs)


def _subst_text(subst: Subst, limit: int | None = None) -> tuple[tuple[str, str], ...]:
    """Printable form of a substitution, sorted by variable id."""
    vids = sorted(v for v in subst if limit is None or v < limit)
    return tuple((f"X{v}", _term_str(subst[v])) for v in vids)


def _nonvar_positions(t: Term):
    """Yield (path, subterm) for every non-variable subterm, preorder."""
    stack = [((), t)]
    while stack:
        path, s = stack.pop()
        if isinstance(s, Var):
            continue
        yield path, s
        args = s.args
        for k in range(len(args) - 1, -1, -1):
            stack.append((path + (k,), args[k]))


def _replace(t: Term, path: tuple[int, ...], new: Term) -> Term:
    if not path:
        return new
    k = path[0]
    args = list(t.args)
    args[k] = _replace(args[k], path[1:], new)
    return app(t.fn, *args)


def _image_maximal(lits, i: int, prec: Precedence, strict: bool = False) -> bool:
    """Is literal i (non-strictly by default) maximal among lits?"""
    def gt(a, b):
        return lpo(a, b, prec)

    mi = lits[i].ms_terms()
    for j, other in enumerate(lits):
        if j == i:
            continue
        c = multiset_cmp(mi, other.ms_terms(), gt)
        if c is Cmp.LESS or (strict and c is Cmp.EQUAL):
            return False
    return True


def _lit_weight(lit: Literal) -> int:
    return lit.lhs.weight + (lit.rhs.weight if lit.rhs is not None else 0)


def eligible_indices(c: Clause, prec: Precedence, sel: str) -> tuple[list[int], bool]:
    """Literal indices a generating rule may act on, plus a selection flag.

    Under "maximal" every ordering-maximal literal is eligible. Under
    "negative" a clause with negative literals commits to its heaviest one
    (ties broken structurally): only that literal participates in inferences,
    which keeps the calculus complete while cutting the search space. The
    flag tells callers eligibility came from selection rather than ordering,
    so the substituted-image maximality recheck does not apply.
    """
    if sel == "negative":
        neg = [i for i, l in enumerate(c.literals) if not l.positive]
        if neg:
            pick = max(neg, key=lambda i: (_lit_weight(c.literals[i]),
                                           c.literals[i].key()))
            return [pick], True
    return c.maximal_indices(prec), False


def _dedup_append(out: list, seen: set, clause: Clause) -> None:
    k = clause.key()
    if k not in seen:
        seen.add(k)
        out.append(clause)


# ---------------------------------------------------------------------------
# generating rules


def superposition(from_c: Clause, into_c: Clause, prec: Precedence,
                  sel: str = "maximal") -> InferenceResult:
    """Overlap a positive equation of `from_c` into subterms of `into_c`.

    Ordered superposition: the equation is used only in instance directions
    that are not ordering-decreasing, only below sides that are not smaller
    than their partner, and only on literals that stay maximal under the
    unifier (strictly so for the equation's own clause). A clause whose
    eligibility comes from negative-literal selection never supplies the
    equation.
    """
    out: InferenceResult = []
    seen: set = set()
    feligible, fsel = eligible_indices(from_c, prec, sel)
    if fsel:
        return out
    offset = clause_vars(into_c)
    flits = [_rename_lit(l, offset) for l in from_c.literals]
    ilits = list(into_c.literals)
    fmax = set(feligible)
    imax, isel = eligible_indices(into_c, prec, sel)
    for i, fl in enumerate(flits):
        if i not in fmax or not fl.positive or not fl.is_equation:
            continue
        for l, r in ((fl.lhs, fl.rhs), (fl.rhs, fl.lhs)):
            if isinstance(l, Var):
                continue
            static = lpo(l, r, prec)
            if static is Cmp.LESS or static is Cmp.EQUAL:
                continue  # LPO is substitution-stable: no instance is productive
            for j in imax:
                il = ilits[j]
                sides = (il.lhs, il.rhs) if il.is_equation else (il.lhs,)
                for si, side in enumerate(sides):
                    other = sides[1 - si] if il.is_equation else None
                    if other is not None and lpo(side, other, prec) is Cmp.LESS:
                        continue
                    for path, u in _nonvar_positions(side):
                        if u.fn.name != l.fn.name:
                            continue
                        sigma = unify(l, u)
                        if sigma is None:
                            continue
                        if static is Cmp.INCOMPARABLE:
                            c = lpo(apply_subst(sigma, l), apply_subst(sigma, r), prec)
                            if c is Cmp.LESS or c is Cmp.EQUAL:
                                continue
                        if other is not None:
                            c = lpo(apply_subst(sigma, side), apply_subst(sigma, other), prec)
                            if c is Cmp.LESS:
                                continue
                        fimg = [x.apply(sigma) for x in flits]
                        if not _image_maximal(fimg, i, prec, strict=True):
                            continue
                        iimg = [x.apply(sigma) for x in ilits]
                        if not isel and not _image_maximal(iimg, j, prec):
                            continue
                        new_side = _replace(side, path, r)
                        if il.is_equation:
                            if si == 0:
                                new_il = Literal(il.positive, new_side, il.rhs)
                            else:
                                new_il = Literal(il.positive, il.lhs, new_side)
                        else:
                            new_il = Literal(il.positive, new_side)
                        lits_out = [fimg[k] for k in range(len(fimg)) if k != i]
                        lits_out.extend(
                            new_il.apply(sigma) if k == j else iimg[k]
                            for k in range(len(iimg))
                        )
                        _dedup_append(out, seen, Clause(
                            canonical_literals(lits_out),
                            derivation=Derivation(
                                "superposition", (from_c.cid, into_c.cid),
                                _subst_text(sigma)),
                        ))
    return out


def equality_resolution(c: Clause, prec: Precedence,
                        sel: str = "maximal") -> InferenceResult:
    """Resolve a maximal negative equation s != t against its own unifier."""
    out: InferenceResult = []
    seen: set = set()
    lits = c.literals
    eligible, esel = eligible_indices(c, prec, sel)
    emax = set(eligible)
    for i, lit in enumerate(lits):
        if lit.positive or not lit.is_equation or i not in emax:
            continue
        sigma = unify(lit.lhs, lit.rhs)
        if sigma is None:
            continue
        img = [x.apply(sigma) for x in lits]
        if not esel and not _image_maximal(img, i, prec):
            continue
        _dedup_append(out, seen, Clause(
            canonical_literals(img[:i] + img[i + 1:]),
            derivation=Derivation(
                "equality_resolution", (c.cid,), _subst_text(sigma)),
        ))
    return out


def equality_factoring(c: Clause, prec: Precedence,
                       sel: str = "maximal") -> InferenceResult:
    """Factor two positive equations with unifiable maximal sides.

    From C | l=r | l'=r' with mgu(l, l') derive sigma(C | r!=r' | l'=r').
    """
    out: InferenceResult = []
    seen: set = set()
    lits = c.literals
    eligible, esel = eligible_indices(c, prec, sel)
    if esel:
        return out
    emax = set(eligible)
    for i, li in enumerate(lits):
        if i not in emax or not li.positive or not li.is_equation:
            continue
        for l, r in ((li.lhs, li.rhs), (li.rhs, li.lhs)):
            static = lpo(l, r, prec)
            if static is Cmp.LESS or static is Cmp.EQUAL:
                continue
            for j, lj in enumerate(lits):
                if j == i or not lj.positive or not lj.is_equation:
                    continue
                for l2, r2 in ((lj.lhs, lj.rhs), (lj.rhs, lj.lhs)):
                    sigma = unify(l, l2)
                    if sigma is None:
                        continue
                    if static is Cmp.INCOMPARABLE:
                        cm = lpo(apply_subst(sigma, l), apply_subst(sigma, r), prec)
                        if cm is Cmp.LESS or cm is Cmp.EQUAL:
                            continue
                    img = [x.apply(sigma) for x in lits]
                    if not _image_maximal(img, i, prec):
                        continue
                    residue = Literal(
                        False, apply_subst(sigma, r), apply_subst(sigma, r2))
                    lits_out = [residue] + [img[k] for k in range(len(img)) if k != i]
                    _dedup_append(out, seen, Clause(
                        canonical_literals(lits_out),
                        derivation=Derivation(
                            "equality_factoring", (c.cid,), _subst_text(sigma)),
                    ))
    return out


def resolution(pos_c: Clause, neg_c: Clause, prec: Precedence,
               sel: str = "maximal") -> InferenceResult:
    """Binary resolution between predicate atoms (positive premise first)."""
    out: InferenceResult = []
    seen: set = set()
    peligible, psel = eligible_indices(pos_c, prec, sel)
    if psel:
        return out
    offset = clause_vars(neg_c)
    plits = [_rename_lit(l, offset) for l in pos_c.literals]
    nlits = list(neg_c.literals)
    pmax = set(peligible)
    nmax, nsel = eligible_indices(neg_c, prec, sel)
    for i, pl in enumerate(plits):
        if i not in pmax or not pl.positive or not pl.is_atom:
            continue
        for j in nmax:
            nl = nlits[j]
            if nl.positive or not nl.is_atom:
                continue
            if pl.lhs.fn.name != nl.lhs.fn.name:
                continue
            sigma = unify(pl.lhs, nl.lhs)
            if sigma is None:
                continue
            pimg = [x.apply(sigma) for x in plits]
            if not _image_maximal(pimg, i, prec, strict=True):
                continue
            nimg = [x.apply(sigma) for x in nlits]
            if not nsel and not _image_maximal(nimg, j, prec):
                continue
            lits_out = [pimg[k] for k in range(len(pimg)) if k != i]
            lits_out += [nimg[k] for k in range(len(nimg)) if k != j]
            _dedup_append(out, seen, Clause(
                canonical_literals(lits_out),
                derivation=Derivation(
                    "resolution", (pos_c.cid, neg_c.cid), _subst_text(sigma)),
            ))
    return out


def factoring(c: Clause, prec: Precedence, sel: str = "maximal") -> InferenceResult:
    """Factor two unifiable positive predicate atoms of one clause."""
    out: InferenceResult = []
    seen: set = set()
    lits = c.literals
    eligible, esel = eligible_indices(c, prec, sel)
    if esel:
        return out
    emax = set(eligible)
    for i, li in enumerate(lits):
        if i not in emax or not li.positive or not li.is_atom:
            continue
        for j, lj in enumerate(lits):
            if j == i or not lj.positive or not lj.is_atom:
                continue
            if li.lhs.fn.name != lj.lhs.fn.name:
                continue
            sigma = unify(li.lhs, lj.lhs)
            if sigma is None:
                continue
            img = [x.apply(sigma) for x in lits]
            if not _image_maximal(img, i, prec):
                continue
            _dedup_append(out, seen, Clause(
                canonical_literals([img[k] for k in range(len(img)) if k != j]),
                derivation=Derivation(
                    "factoring", (c.cid,), _subst_text(sigma)),
            ))
    return out


# ---------------------------------------------------------------------------
# demodulation


def _is_renaming(sigma: Subst) -> bool:
    vals = list(sigma.values())
    return (all(isinstance(v, Var) for v in vals)
            and len({v.vid for v in vals}) == len(vals))


class DemodulationIndex:
    """Positive unit equations bucketed by the head of each usable side.

    Each entry is one orientation of one unit.  Orientations that the LPO
    already orders are applied unconditionally; statically incomparable ones
    re-check the instance order at match time.  Entries keep insertion order,
    so rewriting is deterministic for a fixed add/remove history.
    """

    def __init__(self, prec: Precedence):
        self.prec = prec
        self._buckets: dict[str, list[tuple[Term, Term, bool, int]]] = {}

    def add(self, c: Clause) -> bool:
        """Index both usable orientations of a positive unit equation."""
        if len(c.literals) != 1:
            return False
        lit = c.literals[0]
        if not lit.positive or not lit.is_equation:
            return False
        added = False
        for l, r in ((lit.lhs, lit.rhs), (lit.rhs, lit.lhs)):
            if isinstance(l, Var):
                continue
            static = lpo(l, r, self.prec)
            if static is Cmp.LESS or static is Cmp.EQUAL:
                continue
            self._buckets.setdefault(l.fn.name, []).append(
                (l, r, static is Cmp.INCOMPARABLE, c.cid))
            added = True
        return added

    def remove(self, cid: int) -> None:
        for name in list(self._buckets):
            entries = [e for e in self._buckets[name] if e[3] != cid]
            if entries:
                self._buckets[name] = entries
            else:
                del self._buckets[name]

    def rewrite(self, t: Term, pos_root_partner: Term | None,
                mode: str, exclude: int) -> tuple[Term, int] | None:
        """One rewrite step at the root of t, or None.

        pos_root_partner is the other side when t is the root of a positive
        equation — the only place the classical demodulation condition (the
        rewritten literal must exceed the rewriting instance) has any bite.
        In encompassment mode that condition is waived for non-renaming
        matches.
        """
        for l, r, check, cid in self._buckets.get(t.fn.name, ()):
            if cid == exclude:
                continue
            sigma = match(l, t)
            if sigma is None:
                continue
            rs = apply_subst(sigma, r)
            if check and lpo(t, rs, self.prec) is not Cmp.GREATER:
                continue
            if pos_root_partner is not None:
                ok = lpo(pos_root_partner, rs, self.prec) is Cmp.GREATER
                if mode == "encompass" and not ok:
                    ok = not _is_renaming(sigma)
                if not ok:
                    continue
            return rs, cid
        return None


def _demod_literal(lit: Literal, index: DemodulationIndex, mode: str,
                   exclude: int, used: list[int], budget: list[int]) -> Literal:
    """Rewrite one literal to fixpoint (leftmost-outermost step order)."""
    while budget[0] > 0:
        sides = [lit.lhs, lit.rhs] if lit.rhs is not None else [lit.lhs]
        hit = None
        for si, side in enumerate(sides):
            for path, u in _nonvar_positions(side):
                partner = None
                if not path and lit.positive and lit.rhs is not None:
                    partner = sides[1 - si]
                step = index.rewrite(u, partner, mode, exclude)
                if step is not None:
                    hit = (si, path, step)
                    break
            if hit:
                break
        if hit is None:
            return lit
        si, path, (rs, cid) = hit
        budget[0] -= 1
        if cid not in used:
            used.append(cid)
        new_side = _replace(sides[si], path, rs)
        if lit.rhs is None:
            lit = Literal(lit.positive, new_side)
        elif si == 0:
            lit = Literal(lit.positive, new_side, lit.rhs)
        else:
            lit = Literal(lit.positive, lit.lhs, new_side)
    return lit


def demodulate(c: Clause, units, prec: Precedence,
               mode: str = "encompass") -> Clause | None:
    """Exhaustively rewrite c with oriented instances of unit equations.

    units may be a DemodulationIndex or any iterable of unit clauses.
    Returns the simplified clause, or None when no rewrite applies.  Every
    step replaces a subterm by an LPO-smaller one, so the loop terminates.
    """
    if isinstance(units, DemodulationIndex):
        index = units
    else:
        index = DemodulationIndex(prec)
        for u in sorted(units, key=lambda x: (x.cid, x.key())):
            index.add(u)
    used: list[int] = []
    budget = [_MAX_REWRITES]
    new_lits = [_demod_literal(l, index, mode, c.cid, used, budget)
                for l in c.literals]
    if not used:
        return None
    return Clause(
        canonical_literals(new_lits),
        derivation=Derivation("demodulation", (c.cid, *used)),
        goal=c.goal, ind_depth=c.ind_depth,
    )


# ---------------------------------------------------------------------------
# definition unfolding


class UnfoldIndex:
    """Function-definition equations oriented as written: pattern -> body.

    Holds the guard-free equational cases of recursive definitions.  They
    rewrite left-to-right regardless of the term ordering — the program
    orientation — which is what makes divide-and-conquer definitions usable:
    their bodies are LPO-greater than their heads, so ordered rewriting alone
    would only ever fold them.  Termination comes from the definitions
    themselves: each unfolding consumes constructor layers of the redex.
    """

    def __init__(self):
        self._buckets: dict[str, list[tuple[Term, Term, int]]] = {}

    def add(self, lhs: Term, rhs: Term, cid: int) -> None:
        self._buckets.setdefault(lhs.fn.name, []).append((lhs, rhs, cid))

    def entries(self, head: str):
        return self._buckets.get(head, ())

    def __len__(self) -> int:
        return sum(len(v) for v in self._buckets.values())


def _unfold_term(t: Term, defs: UnfoldIndex, used: list[int],
                 budget: list[int]) -> Term:
    """Rewrite every matched definition redex in t, outermost first."""
    while budget[0] > 0:
        hit = None
        for path, u in _nonvar_positions(t):
            for l, r, cid in defs.entries(u.fn.name):
                sigma = match(l, u)
                if sigma is None:
                    continue
                hit = (path, apply_subst(sigma, r), cid)
                break
            if hit:
                break
        if hit is None:
            return t
        path, body, cid = hit
        budget[0] -= 1
        if cid not in used:
            used.append(cid)
        t = _replace(t, path, body)
    return t


def unfold(c: Clause, defs: UnfoldIndex) -> Clause | None:
    """Rewrite pattern-matched definition redexes to their bodies, to fixpoint.

    Returns the unfolded clause or None when no definition matches.
    """
    used: list[int] = []
    budget = [_MAX_UNFOLDS]
    new_lits = []
    for lit in c.literals:
        lhs = _unfold_term(lit.lhs, defs, used, budget)
        rhs = (_unfold_term(lit.rhs, defs, used, budget)
               if lit.rhs is not None else None)
        new_lits.append(Literal(lit.positive, lhs, rhs))
    if not used:
        return None
    return Clause(
        canonical_literals(new_lits),
        derivation=Derivation("unfold", (c.cid, *used)),
        goal=c.goal, ind_depth=c.ind_depth,
    )


def unfold_superpose(defs: UnfoldIndex, into_c: Clause) -> InferenceResult:
    """Instantiating unfold: unify a definition pattern with a clause subterm.

    Where `unfold` needs the pattern to match outright, this rule instantiates
    clause variables so that a definition case applies — the only way a
    body-greater definition can ever be applied left-to-right under variables.
    Ordering side conditions are deliberately waived (rewriting with an
    equation is sound in either direction); pure matches are skipped because
    simplification already covers them.
    """
    out: InferenceResult = []
    seen: set = set()
    offset = clause_vars(into_c)
    ilits = list(into_c.literals)
    for j, il in enumerate(ilits):
        sides = (il.lhs, il.rhs) if il.is_equation else (il.lhs,)
        for si, side in enumerate(sides):
            for path, u in _nonvar_positions(side):
                for l, r, cid in defs.entries(u.fn.name):
                    if match(l, u) is not None:
                        continue
                    lr = rename_offset(l, offset)
                    sigma = unify(lr, u)
                    if sigma is None:
                        continue
                    rr = rename_offset(r, offset)
                    new_side = _replace(side, path, rr)
                    if il.is_equation:
                        if si == 0:
                            new_il = Literal(il.positive, new_side, il.rhs)
                        else:
                            new_il = Literal(il.positive, il.lhs, new_side)
                    else:
                        new_il = Literal(il.positive, new_side)
                    lits_out = [
                        new_il.apply(sigma) if k == j else ilits[k].apply(sigma)
                        for k in range(len(ilits))
                    ]
                    _dedup_append(out, seen, Clause(
                        canonical_literals(lits_out),
                        derivation=Derivation(
                            "unfold", (cid, into_c.cid),
                            _subst_text(sigma, limit=offset)),
                    ))
    return out


# ---------------------------------------------------------------------------
# subsumption


def _lit_matches(pl: Literal, tl: Literal, subst: Subst):
    """Yield extensions of subst with subst(pl) == tl (both orientations)."""
    if pl.positive != tl.positive or pl.is_atom != tl.is_atom:
        return
    if pl.is_atom:
        s = match(pl.lhs, tl.lhs, subst)
        if s is not None:
            yield s
        return
    s = match(pl.lhs, tl.lhs, subst)
    if s is not None:
        s = match(pl.rhs, tl.rhs, s)
        if s is not None:
            yield s
    s = match(pl.lhs, tl.rhs, subst)
    if s is not None:
        s = match(pl.rhs, tl.lhs, s)
        if s is not None:
            yield s


def subsumes(general: Clause, specific: Clause) -> bool:
    """True iff some substitution maps general into a sub-multiset of specific."""
    gl, sl = general.literals, specific.literals
    if len(gl) > len(sl) or general.weight > specific.weight:
        return False
    # heaviest pattern literals first: they are the most constrained
    order = sorted(range(len(gl)), key=lambda i: -_lit_weight(gl[i]))
    used = [False] * len(sl)

    def go(k: int, subst: Subst) -> bool:
        if k == len(order):
            return True
        pl = gl[order[k]]
        for j, tl in enumerate(sl):
            if used[j]:
                continue
            for s2 in _lit_matches(pl, tl, subst):
                used[j] = True
                if go(k + 1, s2):
                    return True
                used[j] = False
        return False

    return go(0, {})


def subsumption_resolution(c: Clause, units) -> Clause | None:
    """Cut literals of c whose negation is an instance of a unit clause.

    units is any iterable of unit clauses; candidates are tried in cid order.
    Returns the shortened clause (possibly empty) or None.
    """
    ulist = sorted(units, key=lambda u: (u.cid, u.key()))
    kept: list[Literal] = []
    used: list[int] = []
    for lit in c.literals:
        neg = lit.negate()
        cut = None
        for u in ulist:
            if u.cid == c.cid or len(u.literals) != 1:
                continue
            for _ in _lit_matches(u.literals[0], neg, {}):
                cut = u.cid
                break
            if cut is not None:
                break
        if cut is None:
            kept.append(lit)
        else:
            if cut not in used:
                used.append(cut)
    if len(kept) == len(c.literals):
        return None
    return Clause(
        canonical_literals(kept),
        derivation=Derivation("subsumption_resolution", (c.cid, *used)),
        goal=c.goal, ind_depth=c.ind_depth,
    )


# ---------------------------------------------------------------------------
# datatype rules, trivial literals, tautologies


_ACYC = True


def _ctor_embedded(s, t) -> bool:
    """Does s occur strictly below t along constructor symbols only?"""
    if not (isinstance(t, App) and t.fn.is_constructor):
        return False
    return any(a == s or _ctor_embedded(s, a) for a in t.args)


def datatype_simplify(c: Clause):
    """Constructor distinctness/injectivity plus trivial-literal cleanup.

    Returns TAUTOLOGY, a simplified Clause, or None when nothing applies:
      - s = s            positive: tautology      negative: literal dropped
      - c(..) = d(..)    positive: literal dropped   negative: tautology
      - c(s,t) != c(u,v) becomes s != u | t != v (injectivity)
      - s = t with s under t's constructors (acyclicity)
                         positive: literal dropped   negative: tautology
      - a clause with complementary literals is a tautology
    Positive same-constructor equations are kept: replacing one by the
    conjunction of argument equations would need a clause split.
    """
    out: list[Literal] = []
    changed = False
    stack = list(reversed(c.literals))
    while stack:
        lit = stack.pop()
        if lit.is_equation:
            s, t = lit.lhs, lit.rhs
            if s == t:
                if lit.positive:
                    return TAUTOLOGY
                changed = True
                continue
            if _ACYC and (_ctor_embedded(s, t) or _ctor_embedded(t, s)):
                if lit.positive:
                    changed = True
                    continue
                return TAUTOLOGY
            if (isinstance(s, App) and isinstance(t, App)
                    and s.fn.is_constructor and t.fn.is_constructor):
                if s.fn.name != t.fn.name:
                    if lit.positive:
                        changed = True
                        continue
                    return TAUTOLOGY
                if not lit.positive:
                    changed = True
                    for a, b in zip(reversed(s.args), reversed(t.args)):
                        stack.append(Literal(False, a, b))
                    continue
        out.append(lit)
    signs: dict[tuple, set[bool]] = {}
    for lit in out:
        nl = normalize_equation(lit)
        base = (nl.rhs is None, term_key(nl.lhs),
                term_key(nl.rhs) if nl.rhs is not None else None)
        polarities = signs.setdefault(base, set())
        if (not nl.positive) in polarities:
            return TAUTOLOGY
        polarities.add(nl.positive)
    if not changed:
        return None
    return Clause(
        canonical_literals(out),
        derivation=Derivation("datatype_simplify", (c.cid,)),
        goal=c.goal, ind_depth=c.ind_depth,
    )
