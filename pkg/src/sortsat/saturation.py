"""Given-clause saturation over the superposition calculus with induction.

The loop is the classic two-set (active/passive) design: the given clause is
forward-simplified against the active set, activated, used for induction and
for generating inferences against all active clauses, and the results go back
to the passive queue. Clause selection alternates between age and weight
order at the configured ratio, so the search is fair and deterministic.

Definitional equations get special routing (see Strategy.fnrw): the guard-free
term cases of the input definitions feed a pattern->body unfold index used
both as a simplification and as a generating rule, and those same unit
equations stay out of the demodulation index, since the ones the ordering
orients body->pattern would otherwise fold freshly unfolded terms right back.
"""

from __future__ import annotations

import heapq
import itertools
import time
from dataclasses import dataclass, field, replace

from .calculus import (TAUTOLOGY, DemodulationIndex, UnfoldIndex,
                       datatype_simplify, demodulate, equality_factoring,
                       equality_resolution, factoring, resolution, subsumes,
                       subsumption_resolution, superposition, unfold,
                       unfold_superpose)
from .clauses import Clause, Derivation
from .clausify import clausify_all
from .errors import NotGround, SchemaMismatch, SortMismatch
from .induction import (InductionConfig, apply_schema, condition_sets,
                        derive_schemata, select_induction_applications)
from .oracle import Oracle, check_inference_soundness
from .ordering import make_precedence
from .problem import Problem
from .terms import App, subterms, term_key

__all__ = [
    "Strategy",
    "ProverResult",
    "CheckReport",
    "saturate",
    "prove",
    "extract_proof",
    "proof_inductions",
    "check_proof",
]

_GENERATING = frozenset({
    "superposition", "resolution", "equality_resolution",
    "equality_factoring", "factoring", "unfold",
})


@dataclass(frozen=True)
class Strategy:
    """Search parameters for one saturation run."""

    ind: str = "both"                    # struct | comp | both | off
    indoct: bool = False                 # induct on complex ground terms too
    multiclause: bool = True             # fold condition units into inductions
    drc: str = "encompass"               # demodulation redundancy check mode
    term_order: str = "lpo"
    selection: str = "maximal"           # literal selection: maximal | negative
    precedence: str = "default"          # default | occurrence | arity
    overrides: tuple[tuple[str, str], ...] = ()
    age_weight: tuple[int, int] = (1, 4)
    max_nested: int = 2                  # induction nesting depth
    ind_budget: int = 500                # total induction applications
    fnrw: bool = True                    # definition-direction rewriting
    sos: bool = False                    # two-premise rules need a goal or unit premise
    bsimp: bool = True                   # units cut literals out of active clauses
    max_clauses: int = 400_000
    max_seconds: float = 0.0             # 0 = no limit

    def validate(self) -> None:
        if self.term_order != "lpo":
            raise ValueError(f"unsupported term order {self.term_order!r}")
        if self.ind not in ("struct", "comp", "both", "off"):
            raise ValueError(f"unsupported induction mode {self.ind!r}")
        if self.drc not in ("encompass", "standard"):
            raise ValueError(f"unsupported demodulation mode {self.drc!r}")
        if self.selection not in ("maximal", "negative"):
            raise ValueError(f"unsupported literal selection {self.selection!r}")
        if self.precedence not in ("default", "occurrence", "arity"):
            raise ValueError(f"unsupported precedence policy {self.precedence!r}")
        if min(self.age_weight) < 0 or max(self.age_weight) == 0:
            raise ValueError("age_weight needs a positive component")


@dataclass
class ProverResult:
    status: str                          # Theorem | Saturated | ResourceOut
    empty: Clause | None
    proof: tuple[Clause, ...]
    inputs: tuple[Clause, ...]
    stats: dict
    strategy: Strategy
    registry: dict[int, Clause] = field(repr=False, default_factory=dict)


def extract_proof(registry: dict[int, Clause], empty: Clause) -> tuple[Clause, ...]:
    """All ancestors of the empty clause, in clause-id order."""
    need: set[int] = set()
    stack = [empty.cid]
    while stack:
        cid = stack.pop()
        if cid in need:
            continue
        need.add(cid)
        stack.extend(registry[cid].derivation.premises)
    return tuple(registry[cid] for cid in sorted(need))


def proof_inductions(proof: tuple[Clause, ...]) -> dict:
    """Distinct induction applications used in a proof.

    Siblings of one application share premises and (when present) the
    application id in their derivation metadata.
    """
    groups: dict = {}
    for c in proof:
        d = c.derivation
        if d.rule != "induction":
            continue
        app_id = d.meta[0] if d.meta else -1
        groups.setdefault((d.premises, app_id), []).append(c)
    return groups


class _Engine:
    def __init__(self, problem: Problem, strategy: Strategy):
        strategy.validate()
        self.problem = problem
        self.strategy = strategy
        self.sig = problem.sig
        self.prec = make_precedence(
            self.sig, strategy.precedence,
            list(strategy.overrides) or None, problem.calls)
        self.registry: dict[int, Clause] = {}
        self.seen: dict[tuple, int] = {}
        self.active: dict[int, Clause] = {}
        self.demod = DemodulationIndex(self.prec)
        self.age_heap: list[int] = []
        self.weight_heap: list[tuple[int, int]] = []
        self.queued: set[int] = set()
        self.empty: Clause | None = None
        self.stats = {
            "generated": 0, "kept": 0, "activated": 0, "simplified": 0,
            "subsumed": 0, "attempted_inductions": 0,
            "inductions_in_proof": 0, "clauses": 0, "time": 0.0,
        }

        raw_inputs = clausify_all(
            problem.axioms + problem.compile_definitions(),
            problem.conjecture, self.sig)
        self.inputs = tuple(self._register(c) for c in raw_inputs)

        # definition routing: guard-free term cases unfold pattern -> body
        self.defs = UnfoldIndex()
        self.def_cids: set[int] = set()
        by_label = {c.derivation.meta[0]: c for c in self.inputs
                    if c.derivation.meta}
        for name, defn in problem.definitions.items():
            for i, case in enumerate(defn.cases):
                if case.guards or case.is_predicate_case:
                    continue
                unit = by_label.get(f"def:{name}:{i}")
                if unit is None or len(unit.literals) != 1:
                    continue
                self.def_cids.add(unit.cid)
                if strategy.fnrw:
                    self.defs.add(case.lhs, case.rhs, unit.cid)

        self.ind_config: InductionConfig | None = None
        if strategy.ind != "off":
            self.ind_config = InductionConfig(
                schemata=derive_schemata(problem), ind=strategy.ind,
                indoct=strategy.indoct, max_depth=strategy.max_nested)
        self.ind_applied = 0
        # One application per (schema, literal, terms, conditions): descendants
        # of a clause carry the same induction literal, and re-running the
        # schema on each of them floods passive with subsumed copies. Symbols
        # born after input clausification (induction case skolems) are
        # anonymized in the key, so applications that differ only by skolem
        # naming collapse to one.
        self.ind_seen: set = set()
        self.base_syms: set[str] = {
            t.fn.name
            for c in self.inputs for l in c.literals
            for side in (l.lhs, l.rhs) if side is not None
            for t in subterms(side) if isinstance(t, App)
        }

    # ---- registry ----

    def _register(self, c: Clause) -> Clause:
        cid = len(self.registry)
        c = replace(c, cid=cid)
        self.registry[cid] = c
        self.seen.setdefault(c.key(), cid)
        return c

    def _admit(self, raw: Clause) -> Clause | None:
        """Register a freshly derived clause, or None if it's a known key."""
        if not raw.is_empty and self.seen.get(raw.key()) is not None:
            return None
        d = raw.derivation
        if d.rule in _GENERATING and d.premises:
            parents = [self.registry[p] for p in d.premises]
            raw = replace(
                raw,
                goal=raw.goal or any(p.goal for p in parents),
                ind_depth=max(p.ind_depth for p in parents))
        c = self._register(raw)
        if c.is_empty and self.empty is None:
            self.empty = c
        return c

    # ---- queues ----

    # Passive-queue handicaps: clauses outside the goal's derivation cone get
    # a weight factor, and every variable occurrence costs extra. Refutations
    # here end in ground skolem reasoning, while the order axioms breed
    # non-ground resolvents without bound; both knobs point the weight picks
    # at the ground goal cone.
    _NONGOAL_FACTOR = 4
    _VAR_COST = 3

    def _queue_weight(self, c: Clause) -> int:
        nvars = 0
        for l in c.literals:
            for side in (l.lhs, l.rhs):
                if side is None:
                    continue
                nvars += sum(1 for t in subterms(side) if not isinstance(t, App))
        w = c.weight + self._VAR_COST * nvars
        return w if c.goal else w * self._NONGOAL_FACTOR

    def _push(self, c: Clause) -> None:
        if c.cid in self.queued:
            return
        self.queued.add(c.cid)
        heapq.heappush(self.age_heap, c.cid)
        heapq.heappush(self.weight_heap, (self._queue_weight(c), c.cid))
        self.stats["kept"] += 1

    def _pop(self, pick: int) -> Clause | None:
        na, nw = self.strategy.age_weight
        by_age = (pick % (na + nw)) < na
        heaps = (self.age_heap, self.weight_heap)
        for h in (heaps if by_age else reversed(heaps)):
            while h:
                entry = heapq.heappop(h)
                cid = entry if isinstance(entry, int) else entry[1]
                if cid in self.queued:
                    self.queued.discard(cid)
                    return self.registry[cid]
        return None

    # ---- simplification ----

    def _active_units(self) -> list[Clause]:
        return [a for a in self.active.values() if len(a.literals) == 1]

    def _forward(self, c: Clause) -> Clause | None:
        """Simplify against the active set; None when redundant."""
        for _ in range(40):
            r = datatype_simplify(c)
            if r is TAUTOLOGY:
                self.stats["simplified"] += 1
                return None
            if r is not None:
                c = self._admit(r) or self.registry[self.seen[r.key()]]
                continue
            if c.is_empty:
                return c
            r = unfold(c, self.defs)
            if r is None:
                r = demodulate(c, self.demod, self.prec, self.strategy.drc)
            if r is None:
                r = subsumption_resolution(c, self._active_units())
            if r is None:
                break
            c = self._admit(r) or self.registry[self.seen[r.key()]]
        for a in self.active.values():
            if a.cid != c.cid and subsumes(a, c):
                self.stats["subsumed"] += 1
                return None
        return c

    def _backward(self, g: Clause) -> None:
        for cid, a in list(self.active.items()):
            if cid == g.cid:
                continue
            if subsumes(g, a):
                del self.active[cid]
                self.demod.remove(cid)
                self.stats["subsumed"] += 1
        if len(g.literals) != 1:
            return
        if (g.literals[0].positive and g.literals[0].is_equation
                and g.cid not in self.def_cids):
            for cid, a in list(self.active.items()):
                if cid == g.cid:
                    continue
                r = demodulate(a, [g], self.prec, self.strategy.drc)
                if r is not None:
                    del self.active[cid]
                    self.demod.remove(cid)
                    nc = self._admit(r)
                    if nc is not None:
                        self._push(nc)
        # A fresh unit can cut a literal out of clauses processed before it
        # existed; without this the shortened clause is unreachable, since
        # eligibility pins those clauses to their biggest literal.
        if not self.strategy.bsimp:
            return
        for cid, a in list(self.active.items()):
            if cid == g.cid or len(a.literals) < 2:
                continue
            r = subsumption_resolution(a, [g])
            if r is not None:
                del self.active[cid]
                self.demod.remove(cid)
                nc = self._admit(r)
                if nc is not None:
                    self._push(nc)

    # ---- generation ----

    def _generate(self, g: Clause) -> None:
        prec = self.prec
        sel = self.strategy.selection
        batches = [
            equality_resolution(g, prec, sel),
            equality_factoring(g, prec, sel),
            factoring(g, prec, sel),
        ]
        if self.strategy.fnrw:
            batches.append(unfold_superpose(self.defs, g))
        # Set-of-support-ish damper: the order axioms resolve against each
        # other without bound, so optionally require a goal-derived or unit
        # premise in every two-premise inference.
        g_free = g.goal or len(g.literals) == 1
        for a in list(self.active.values()):
            if self.strategy.sos and not g_free \
                    and not (a.goal or len(a.literals) == 1):
                continue
            batches.append(superposition(a, g, prec, sel))
            batches.append(resolution(a, g, prec, sel))
            if a.cid != g.cid:
                batches.append(superposition(g, a, prec, sel))
                batches.append(resolution(g, a, prec, sel))
        for raw in itertools.chain.from_iterable(batches):
            self.stats["generated"] += 1
            simp = datatype_simplify(raw)
            if simp is TAUTOLOGY:
                continue
            nc = self._admit(raw)
            if nc is None:
                continue
            if simp is not None:
                # queue the cleaned-up clause at its true weight; the raw
                # form stays registered so the derivation chain is intact
                reduced = self._admit(replace(
                    simp, derivation=replace(simp.derivation, premises=(nc.cid,)),
                    goal=nc.goal, ind_depth=nc.ind_depth))
                if reduced is not None:
                    self._push(reduced)
            else:
                self._push(nc)
            if self.empty is not None:
                return

    def _induction_key(self, schema, lit, terms, conds) -> tuple:
        mapping: dict[str, str] = {}

        def sym(name: str) -> str:
            if name in self.base_syms:
                return name
            return mapping.setdefault(name, f"*{len(mapping)}")

        def walk(t):
            if not isinstance(t, App):
                return ("v", t.vid)
            return (sym(t.fn.name), tuple(walk(a) for a in t.args))

        def lit_key(l):
            if l.rhs is None:
                return (l.positive, walk(l.lhs))
            return (l.positive, walk(l.lhs), walk(l.rhs))

        return (schema.sid, lit_key(lit),
                tuple(walk(t) for t in terms),
                tuple(sorted(tuple(lit_key(l) for l in c.literals)
                             for c in conds)))

    def _induct(self, g: Clause) -> None:
        if self.ind_config is None or self.empty is not None:
            return
        for li, terms, schema in select_induction_applications(g, self.ind_config):
            subsets = [()]
            if self.strategy.multiclause:
                subsets = condition_sets(
                    g, terms, self._active_units(),
                    self.ind_config.max_conditions)
            for conds in subsets:
                key = self._induction_key(schema, g.literals[li], terms, conds)
                if key in self.ind_seen:
                    continue
                if self.ind_applied >= self.strategy.ind_budget:
                    return
                self.ind_seen.add(key)
                self.ind_applied += 1
                self.stats["attempted_inductions"] += 1
                try:
                    ia = apply_schema(g, li, terms, schema, self.sig, conds,
                                      app_id=self.ind_applied)
                except (SchemaMismatch, NotGround, SortMismatch):
                    continue
                for cl in ia.conclusions:
                    nc = self._admit(cl)
                    if nc is not None:
                        self._push(nc)
                if self.empty is not None:
                    return

    # ---- main loop ----

    def run(self, deadline: float | None) -> ProverResult:
        t0 = time.monotonic()
        status = "Saturated"
        for c in self.inputs:
            if c.is_empty and self.empty is None:
                self.empty = c
            self._push(c)
        pick = 0
        while self.empty is None:
            if deadline is not None and time.monotonic() >= deadline:
                status = "ResourceOut"
                break
            if len(self.registry) >= self.strategy.max_clauses:
                status = "ResourceOut"
                break
            given = self._pop(pick)
            if given is None:
                break
            pick += 1
            g = self._forward(given)
            if g is None:
                continue
            if g.is_empty:
                self.empty = g
                break
            self._backward(g)
            self.active[g.cid] = g
            lit = g.literals[0]
            if (len(g.literals) == 1 and lit.positive and lit.is_equation
                    and g.cid not in self.def_cids):
                self.demod.add(g)
            self.stats["activated"] += 1
            self._induct(g)
            if self.empty is None:
                self._generate(g)
        if self.empty is not None:
            status = "Theorem"
        proof: tuple[Clause, ...] = ()
        if self.empty is not None:
            proof = extract_proof(self.registry, self.empty)
            self.stats["inductions_in_proof"] = len(proof_inductions(proof))
        self.stats["clauses"] = len(self.registry)
        self.stats["time"] = round(time.monotonic() - t0, 3)
        return ProverResult(
            status=status, empty=self.empty, proof=proof, inputs=self.inputs,
            stats=self.stats, strategy=self.strategy, registry=self.registry)


def saturate(problem: Problem, strategy: Strategy = Strategy(),
             deadline: float | None = None) -> ProverResult:
    engine = _Engine(problem, strategy)
    if deadline is None and strategy.max_seconds > 0:
        deadline = time.monotonic() + strategy.max_seconds
    return engine.run(deadline)


def prove(problem: Problem, strategy: Strategy = Strategy(),
          timeout: float = 0.0) -> ProverResult:
    """Saturate with a wall-clock budget (0 = none)."""
    deadline = time.monotonic() + timeout if timeout > 0 else None
    return saturate(problem, strategy, deadline)


# ---------------------------------------------------------------------------
# proof checking


@dataclass
class CheckReport:
    ok: bool
    errors: list[str]
    steps: int
    semantic_steps: int

    def __str__(self) -> str:
        head = "valid" if self.ok else "INVALID"
        lines = [f"proof {head}: {self.steps} steps, "
                 f"{self.semantic_steps} semantically checked"]
        lines.extend(f"  {e}" for e in self.errors)
        return "\n".join(lines)


def _skolem_consts(clauses) -> set[str]:
    out: set[str] = set()
    for c in clauses:
        for lit in c.literals:
            for t in lit.terms():
                for s in subterms(t):
                    if isinstance(s, App) and s.fn.is_skolem:
                        out.add(s.fn.name)
    return out


def check_proof(problem: Problem, steps, inputs=None,
                domain_size: int = 2, max_len: int = 2,
                ind_max_len: int = 1, cap: int = 1 << 21) -> CheckReport:
    """Structural and semantic validation of a proof DAG.

    Structural: premises precede conclusions, input clauses match the
    problem's clausification, the empty clause is present. Semantic: every
    non-input step is replayed against finite standard models - induction
    steps jointly per application with their fresh constants as existential
    witnesses, everything else as plain entailment.
    """
    errors: list[str] = []
    steps = sorted(steps, key=lambda c: c.cid)
    if inputs is None:
        inputs = clausify_all(
            problem.axioms + problem.compile_definitions(),
            problem.conjecture, problem.sig)
    input_keys = {c.key() for c in inputs}
    by_cid = {c.cid: c for c in steps}
    if len(by_cid) != len(steps):
        errors.append("duplicate step ids")
    if not any(c.is_empty for c in steps):
        errors.append("no empty clause")

    ind_groups: dict = {}
    plain: list[Clause] = []
    for c in steps:
        d = c.derivation
        for p in d.premises:
            if p not in by_cid:
                errors.append(f"step {c.cid}: missing premise {p}")
            elif p >= c.cid:
                errors.append(f"step {c.cid}: premise {p} does not precede it")
        if d.rule in ("input", "negated_conjecture"):
            if c.key() not in input_keys:
                errors.append(f"step {c.cid}: not an input clause of the problem")
        elif d.rule == "induction":
            app_id = d.meta[0] if d.meta else -1
            ind_groups.setdefault((d.premises, app_id), []).append(c)
        else:
            plain.append(c)
    if errors:
        return CheckReport(False, errors, len(steps), 0)

    oracle = Oracle(problem, domain_size=domain_size, max_len=max_len,
                    fuse=1_000_000)
    ind_oracle = Oracle(problem, domain_size=domain_size, max_len=ind_max_len,
                        fuse=1_000_000)
    semantic = 0
    for c in plain:
        prem = [by_cid[p] for p in c.derivation.premises]
        if not prem:
            continue
        cx = check_inference_soundness(oracle, prem, [c], (), cap=cap)
        semantic += 1
        if cx is not None:
            errors.append(
                f"step {c.cid} ({c.derivation.rule}): unsound under "
                f"{cx['interpretation']}")
    for (premises, _app_id), group in sorted(ind_groups.items()):
        prem = [by_cid[p] for p in premises]
        fresh = tuple(sorted(_skolem_consts(group) - _skolem_consts(prem)))
        cx = check_inference_soundness(ind_oracle, prem, group, fresh, cap=cap)
        semantic += 1
        if cx is not None:
            errors.append(
                f"induction at {[c.cid for c in group]}: unsound under "
                f"{cx['interpretation']}")
    return CheckReport(not errors, errors, len(steps), semantic)
