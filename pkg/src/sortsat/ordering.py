"""Lexicographic path ordering and precedence construction.

The precedence is total on function symbols. Ranks are banded: the truth
constant lowest, then datatype constructors, then skolem constants, then the
remaining symbols in call-graph topological order (a defined function ranks
above every symbol occurring in its definition). Explicit override pairs are
applied last via a constraint-respecting topological re-sort.
"""

from __future__ import annotations

import heapq
from enum import Enum

from .errors import CyclicOverride
from .terms import App, FuncDecl, Signature, Term, Var

__all__ = ["Cmp", "Precedence", "make_precedence", "lpo", "lpo_gt", "multiset_cmp"]


class Cmp(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1
    INCOMPARABLE = 2

    def flip(self) -> "Cmp":
        if self is Cmp.LESS:
            return Cmp.GREATER
        if self is Cmp.GREATER:
            return Cmp.LESS
        return self


_BAND_TRUTH = 0
_BAND_CTOR = 1
_BAND_SKOLEM = 2
_BAND_FN = 3
_BAND_SIZE = 1_000_000


class Precedence:
    """Total precedence on symbols with an LPO comparison cache."""

    def __init__(self, ranks: dict[str, int], policy: str, overrides=()):
        self.ranks = ranks
        self.policy = policy
        self.overrides = tuple(overrides)
        self._next_skolem_rank = max(
            (r for r in ranks.values() if r // _BAND_SIZE == _BAND_SKOLEM),
            default=_BAND_SKOLEM * _BAND_SIZE - 1,
        ) + 1
        self._gt_cache: dict[tuple[Term, Term], bool] = {}
        self._max_cache: dict[int, list[int]] = {}

    def rank(self, name: str) -> int:
        r = self.ranks.get(name)
        if r is None:
            # late symbol (fresh skolem): slot into the skolem band
            r = self._next_skolem_rank
            self._next_skolem_rank += 1
            self.ranks[name] = r
        return r

    def gt_sym(self, f: str, g: str) -> bool:
        return self.rank(f) > self.rank(g)

    def compare(self, s: Term, t: Term) -> Cmp:
        return lpo(s, t, self)


def _call_graph_order(sig: Signature, calls: dict[str, set[str]]) -> list[str]:
    """Topological order (callees first) with declaration-order tie-break."""
    names = list(sig.decls)
    pos = {n: i for i, n in enumerate(names)}
    order: list[str] = []
    state: dict[str, int] = {}

    def visit(n: str):
        st = state.get(n)
        if st is not None:
            return  # visited, or on the stack (mutual recursion: break cycle)
        state[n] = 1
        for m in sorted(calls.get(n, ()), key=lambda x: pos.get(x, -1)):
            if m != n and m in sig.decls:
                visit(m)
        order.append(n)

    for n in names:
        visit(n)
    return order


def make_precedence(
    sig: Signature,
    policy: str = "default",
    overrides: list[tuple[str, str]] | None = None,
    calls: dict[str, set[str]] | None = None,
) -> Precedence:
    """Build a total precedence.

    policy: "default" (call-graph topological), "occurrence" (declaration
    order), or "arity" (by arity, then declaration order). `overrides` is a
    list of (higher, lower) pairs applied last; cyclic constraints raise
    CyclicOverride.
    """
    overrides = list(overrides or [])
    decls = sig.decls

    def band(d: FuncDecl) -> int:
        if d.name in ("$true", "$false"):
            return _BAND_TRUTH
        if d.is_constructor:
            return _BAND_CTOR
        if d.is_skolem:
            return _BAND_SKOLEM
        return _BAND_FN

    names = list(decls)
    if policy == "occurrence":
        fn_order = list(names)
    elif policy == "arity":
        pos0 = {n: i for i, n in enumerate(names)}
        fn_order = sorted(names, key=lambda n: (decls[n].arity, pos0[n]))
    elif policy == "default":
        fn_order = _call_graph_order(sig, calls or {})
    else:
        raise ValueError(f"unknown precedence policy: {policy}")

    # group into bands, preserving fn_order inside each band
    banded: dict[int, list[str]] = {0: [], 1: [], 2: [], 3: []}
    for n in fn_order:
        banded[band(decls[n])].append(n)
    base = banded[0] + banded[1] + banded[2] + banded[3]

    for hi, lo in overrides:
        if hi not in decls or lo not in decls:
            raise CyclicOverride(f"override references unknown symbol: {hi} > {lo}")

    if overrides:
        # total re-sort: constraint "lo before hi" for every (hi, lo) pair,
        # ties broken by the banded default position (Kahn with a heap).
        pos = {n: i for i, n in enumerate(base)}
        succ: dict[str, list[str]] = {n: [] for n in base}
        indeg = {n: 0 for n in base}
        for hi, lo in overrides:
            succ[lo].append(hi)
            indeg[hi] += 1
        heap = [(pos[n], n) for n in base if indeg[n] == 0]
        heapq.heapify(heap)
        out: list[str] = []
        while heap:
            _, n = heapq.heappop(heap)
            out.append(n)
            for m in succ[n]:
                indeg[m] -= 1
                if indeg[m] == 0:
                    heapq.heappush(heap, (pos[m], m))
        if len(out) != len(base):
            raise CyclicOverride(f"cyclic precedence overrides: {overrides}")
        ranks = {n: _BAND_FN * _BAND_SIZE + i for i, n in enumerate(out)}
    else:
        ranks = {}
        counters = {0: 0, 1: 0, 2: 0, 3: 0}
        for n in base:
            b = band(decls[n])
            ranks[n] = b * _BAND_SIZE + counters[b]
            counters[b] += 1
    return Precedence(ranks, policy, overrides)


# ---------------------------------------------------------------------------
# LPO


def lpo_gt(s: Term, t: Term, prec: Precedence) -> bool:
    """True iff s >_lpo t."""
    if s is t or s == t:
        return False
    cache = prec._gt_cache
    key = (s, t)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if len(cache) > 600_000:
        cache.clear()
    r = _lpo_gt(s, t, prec)
    cache[key] = r
    return r


def lpo(s: Term, t: Term, prec: Precedence) -> Cmp:
    if s is t or s == t:
        return Cmp.EQUAL
    if lpo_gt(s, t, prec):
        return Cmp.GREATER
    if lpo_gt(t, s, prec):
        return Cmp.LESS
    return Cmp.INCOMPARABLE


def _occurs_term(v: Var, t: Term) -> bool:
    stack = [t]
    while stack:
        u = stack.pop()
        if u is v or u == v:
            return True
        if isinstance(u, App):
            stack.extend(u.args)
    return False


def _lpo_gt(s: Term, t: Term, prec: Precedence) -> bool:
    # precondition: s != t
    if isinstance(s, Var):
        return False
    if isinstance(t, Var):
        return _occurs_term(t, s)
    # (i) some argument of s is >= t
    for a in s.args:
        if a == t or lpo_gt(a, t, prec):
            return True
    rs, rt = prec.rank(s.fn.name), prec.rank(t.fn.name)
    if rs > rt:
        # (ii) s > every argument of t
        return all(lpo_gt(s, b, prec) for b in t.args)
    if rs == rt and s.fn.name == t.fn.name:
        # (iii) lexicographically greater args, and s > every argument of t
        for a, b in zip(s.args, t.args):
            if a == b:
                continue
            if lpo_gt(a, b, prec):
                return all(lpo_gt(s, c, prec) for c in t.args)
            return False
    return False


# ---------------------------------------------------------------------------
# multiset extension (for literal comparison)


def multiset_cmp(xs: tuple, ys: tuple, cmp) -> Cmp:
    """Multiset extension of a (possibly partial) order given by `cmp`."""
    xs = list(xs)
    ys = list(ys)
    for x in list(xs):
        for y in list(ys):
            if x == y:
                xs.remove(x)
                ys.remove(y)
                break
    if not xs and not ys:
        return Cmp.EQUAL
    if not xs:
        return Cmp.LESS
    if not ys:
        return Cmp.GREATER

    def dominates(big, small) -> bool:
        return all(any(cmp(x, y) is Cmp.GREATER for x in big) for y in small)

    if dominates(xs, ys):
        return Cmp.GREATER
    if dominates(ys, xs):
        return Cmp.LESS
    return Cmp.INCOMPARABLE
