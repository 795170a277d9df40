"""Ground-truth evaluation of prenex formulas as alternating games.

The central quantity is the game value: universal blocks maximize and
existential blocks minimize the number of unsatisfied clauses, outermost
block first.  ``game_value`` computes it exactly by alternating search.
The search applies only value-preserving reductions -- integer alpha-beta
cutoffs, skipping variables that no longer occur in any undecided clause,
quantifier-aware pure-literal moves, and independent evaluation of
variable-disjoint subproblems -- so its answer always equals plain
enumeration (the test suite checks exactly that).  Work is metered by a
leaf budget; full enumeration of n variables costs at most 2^n leaves, and
pruning usually far fewer.

Also here: the polynomial satisfiability decision for purely existential
clause sets where every variable occurs at most twice (variable
elimination plus a clause-saturating bipartite matching), and executable
forms of the two assignment-repair facts the universal gadget relies on.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from itertools import product
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence

from .formula import Clause, PrenexFormula, Quantifier

if TYPE_CHECKING:  # pragma: no cover
    from .reduction import ReductionTrace

__all__ = [
    "OracleError",
    "BudgetExceeded",
    "IncompleteAssignment",
    "OccurrenceBoundViolated",
    "TraceMismatch",
    "PreconditionViolated",
    "Assignment",
    "GameValue",
    "DEFAULT_BUDGET",
    "unsat_count",
    "game_value",
    "verify_value_preservation",
    "solve_exists_occ2",
    "repair_outdegree",
    "check_mismatch_bound",
    "witness_lines",
]

DEFAULT_BUDGET = 1 << 24


class OracleError(Exception):
    """Base class for oracle-layer failures."""


class BudgetExceeded(OracleError):
    """The evaluation budget ran out before the value was determined."""


class IncompleteAssignment(OracleError):
    """Assignment domain does not match the formula's bound variables."""


class OccurrenceBoundViolated(OracleError):
    """A variable occurs more often than the solver's contract allows."""


class TraceMismatch(OracleError):
    """A rewriting trace does not describe the given formula."""


class PreconditionViolated(OracleError):
    """An assignment-level check was called outside its stated precondition."""


@dataclass(frozen=True)
class Assignment:
    """A total Boolean assignment over a stated variable set."""

    values: Mapping[int, bool]

    def __getitem__(self, variable: int) -> bool:
        return self.values[variable]

    def __contains__(self, variable: int) -> bool:
        return variable in self.values

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(self.values)

    def updated(self, changes: Mapping[int, bool]) -> "Assignment":
        merged = dict(self.values)
        merged.update(changes)
        return Assignment(merged)


@dataclass(frozen=True)
class GameValue:
    """Count of unsatisfied clauses under optimal alternating play."""

    value: int


def _check_total(formula: PrenexFormula, assignment: Assignment) -> None:
    need = formula.bound_variables()
    have = assignment.domain
    if need != have:
        missing = sorted(need - have)
        extra = sorted(have - need)
        raise IncompleteAssignment(
            f"assignment domain mismatch: missing {missing}, extra {extra}"
        )


def unsat_count(formula: PrenexFormula, assignment: Assignment) -> int:
    """Exact number of clauses with no true literal under the assignment."""
    _check_total(formula, assignment)
    count = 0
    for clause in formula.clauses:
        if not any(lit.holds(assignment[lit.variable]) for lit in clause):
            count += 1
    return count


# ---------------------------------------------------------------------------
# Alternating game search


class _Frame:
    """One independent subproblem: its clause ids and per-block variables."""

    __slots__ = (
        "clause_ids",
        "block_vars",
        "cursor",
        "undecided",
        "new_falsified",
        "split_mark",
    )

    def __init__(self, clause_ids: list[int], block_vars: list[list[int]], undecided: int):
        self.clause_ids = clause_ids
        self.block_vars = block_vars
        self.cursor = [0] * len(block_vars)
        self.undecided = undecided
        self.new_falsified = 0
        # Re-attempt decomposition once the undecided count halves.
        self.split_mark = undecided // 2


class _Searcher:
    _UNDECIDED, _SATISFIED, _FALSIFIED = 0, 1, 2

    def __init__(self, formula: PrenexFormula, budget: int, prune: bool):
        self.budget = budget
        self.prune = prune
        self.leaves = 0
        self.is_max: list[bool] = [
            block.kind is Quantifier.UNIVERSAL for block in formula.blocks
        ]
        width = formula.variable_count + 1
        self.block_of = [-1] * width
        for bi, block in enumerate(formula.blocks):
            for v in block.variables:
                self.block_of[v] = bi
        self.clause_lits: list[tuple[int, ...]] = [c.to_ints() for c in formula.clauses]
        self.occ: list[list[tuple[int, bool]]] = [[] for _ in range(width)]
        self.pos_free = [0] * width
        self.neg_free = [0] * width
        for ci, lits in enumerate(self.clause_lits):
            for lit in lits:
                v, neg = abs(lit), lit < 0
                self.occ[v].append((ci, neg))
                if neg:
                    self.neg_free[v] += 1
                else:
                    self.pos_free[v] += 1
        self.value_of: list[bool | None] = [None] * width
        self.status = [self._UNDECIDED] * len(self.clause_lits)
        self.free_count = [len(lits) for lits in self.clause_lits]
        self.trail: list[tuple] = []
        # Variables whose remaining free occurrences just became one-sided.
        self.pure_stack: list[int] = []
        # Undecided clauses that just dropped to one free literal slot.
        self.unit_stack: list[int] = []
        self.frame: _Frame | None = None

    # -- state transitions ---------------------------------------------------

    def assign(self, var: int, val: bool) -> tuple[int, int]:
        """Set ``var``; returns (newly falsified, newly decided) clause counts."""
        self.value_of[var] = val
        trail = self.trail
        trail.append(("var", var))
        falsified = 0
        decided = 0
        for ci, neg in self.occ[var]:
            if self.status[ci]:
                continue
            if neg:
                self.neg_free[var] -= 1
            else:
                self.pos_free[var] -= 1
            self.free_count[ci] -= 1
            trail.append(("slot", ci, neg, var))
            if val != neg:
                self.status[ci] = self._SATISFIED
                decided += 1
                trail.append(("sat", ci))
                for lit in self.clause_lits[ci]:
                    w = abs(lit)
                    if self.value_of[w] is None:
                        if lit < 0:
                            self.neg_free[w] -= 1
                            trail.append(("other", w, True))
                        else:
                            self.pos_free[w] -= 1
                            trail.append(("other", w, False))
                        self._note_counters(w)
            elif self.free_count[ci] == 0:
                self.status[ci] = self._FALSIFIED
                falsified += 1
                decided += 1
                trail.append(("fals", ci))
            elif self.free_count[ci] == 1:
                self.unit_stack.append(ci)
        return falsified, decided

    def _note_counters(self, var: int) -> None:
        pos, neg = self.pos_free[var], self.neg_free[var]
        if (pos == 0) != (neg == 0):
            self.pure_stack.append(var)

    def undo_one_var(self) -> None:
        trail = self.trail
        while True:
            entry = trail.pop()
            kind = entry[0]
            if kind == "var":
                self.value_of[entry[1]] = None
                return
            if kind == "slot":
                _, ci, neg, var = entry
                self.free_count[ci] += 1
                if neg:
                    self.neg_free[var] += 1
                else:
                    self.pos_free[var] += 1
            elif kind == "sat" or kind == "fals":
                self.status[entry[1]] = self._UNDECIDED
            elif kind == "other":
                _, w, was_neg = entry
                if was_neg:
                    self.neg_free[w] += 1
                else:
                    self.pos_free[w] += 1

    # -- move selection -------------------------------------------------------

    def _forced_moves(self, frame: _Frame) -> int:
        """Apply pure-literal assignments; returns how many were made.

        A variable whose free occurrences all share one sign is dominated:
        the minimizing side satisfies them, the maximizing side falsifies
        them, and either way the game value is unchanged, so no branching.
        """
        made = 0
        stack = self.pure_stack
        while stack:
            var = stack.pop()
            if self.value_of[var] is not None:
                continue
            pos, neg = self.pos_free[var], self.neg_free[var]
            if (pos == 0) == (neg == 0):
                continue
            satisfying = pos > 0
            if self.is_max[self.block_of[var]]:
                choice = not satisfying
            else:
                choice = satisfying
            falsified, decided = self.assign(var, choice)
            frame.new_falsified += falsified
            frame.undecided -= decided
            made += 1
        return made

    def _pick_unit(self, frame: _Frame, bi: int) -> tuple[int, bool] | None:
        """Branch variable from a one-free-slot clause, if one is actionable."""
        stack = self.unit_stack
        while stack:
            ci = stack[-1]
            if self.status[ci] or self.free_count[ci] != 1:
                stack.pop()
                continue
            for lit in self.clause_lits[ci]:
                w = abs(lit)
                if self.value_of[w] is None:
                    if self.block_of[w] == bi:
                        return w, lit > 0
                    return None  # belongs to a later block; revisit then
            stack.pop()  # stale entry
        return None

    def _pick(self, frame: _Frame, bi: int) -> tuple[int, bool] | None:
        unit = self._pick_unit(frame, bi)
        if unit is not None:
            var, satisfying = unit
            first = (not satisfying) if self.is_max[bi] else satisfying
            return var, first
        variables = frame.block_vars[bi]
        # Skipped prefix variables are assigned or irrelevant; both conditions
        # persist within the subtree, so the cursor only ever moves forward.
        i = frame.cursor[bi]
        n = len(variables)
        while i < n:
            var = variables[i]
            if self.value_of[var] is None and (
                self.pos_free[var] or self.neg_free[var]
            ):
                break
            i += 1
        frame.cursor[bi] = i
        if i == n:
            return None
        var = variables[i]
        richer = self.pos_free[var] >= self.neg_free[var]
        first = (not richer) if self.is_max[bi] else richer
        return var, first

    # -- decomposition ---------------------------------------------------------

    def _try_split(self, frame: _Frame, bi: int) -> list[_Frame] | None:
        alive = [ci for ci in frame.clause_ids if not self.status[ci]]
        if len(alive) <= 1:
            return None
        parent: dict[int, int] = {}

        def find(x: int) -> int:
            root = x
            while parent[root] != root:
                root = parent[root]
            while parent[x] != root:
                parent[x], x = root, parent[x]
            return root

        groups: dict[int, int] = {}
        clause_group: list[tuple[int, int]] = []
        for ci in alive:
            anchor = -1
            for lit in self.clause_lits[ci]:
                w = abs(lit)
                if self.value_of[w] is not None:
                    continue
                if w not in parent:
                    parent[w] = w
                if anchor < 0:
                    anchor = w
                else:
                    parent[find(w)] = find(anchor)
            clause_group.append((ci, anchor))
        roots = {find(anchor) for _, anchor in clause_group}
        if len(roots) <= 1:
            return None
        frames: dict[int, _Frame] = {}
        n_blocks = len(frame.block_vars)
        for root in sorted(roots):
            frames[root] = _Frame([], [[] for _ in range(n_blocks)], 0)
        for ci, anchor in clause_group:
            sub = frames[find(anchor)]
            sub.clause_ids.append(ci)
            sub.undecided += 1
        for var in sorted(parent):
            frames[find(var)].block_vars[self.block_of[var]].append(var)
        for sub in frames.values():
            sub.split_mark = sub.undecided // 2
        return [frames[root] for root in sorted(frames)]

    # -- core search -----------------------------------------------------------

    def solve(self, frame: _Frame, bi: int, alpha: int, beta: int) -> int:
        """Exact optimal falsified-count for the frame (fail-soft windows)."""
        saved_falsified = frame.new_falsified
        saved_undecided = frame.undecided
        saved_cursor = list(frame.cursor)
        mark = len(self.trail)
        self._forced_moves(frame)
        try:
            return self._solve_inner(frame, bi, alpha, beta)
        finally:
            while len(self.trail) > mark:
                self.undo_one_var()
            frame.new_falsified = saved_falsified
            frame.undecided = saved_undecided
            frame.cursor = saved_cursor

    def _solve_inner(self, frame: _Frame, bi: int, alpha: int, beta: int) -> int:
        lower = frame.new_falsified
        upper = lower + frame.undecided
        if lower == upper:
            self._count_leaf()
            return lower
        if self.prune:
            if lower >= beta:
                self._count_leaf()
                return lower
            if upper <= alpha:
                self._count_leaf()
                return upper
        if frame.undecided <= frame.split_mark:
            frame.split_mark = frame.undecided // 2
            subframes = self._try_split(frame, bi)
            if subframes is not None:
                # The hint stacks may still hold entries about other parts of
                # the parent frame; give each component a clean slate so its
                # forced moves and unit picks stay inside the component.
                total = frame.new_falsified
                saved_units, saved_pures = self.unit_stack, self.pure_stack
                for sub in subframes:
                    self.unit_stack, self.pure_stack = [], []
                    total += self.solve(sub, bi, 0, sub.undecided + 1)
                self.unit_stack, self.pure_stack = saved_units, saved_pures
                return total

        pick = None
        while bi < len(frame.block_vars):
            pick = self._pick(frame, bi)
            if pick is not None:
                break
            bi += 1
        if pick is None:
            # Every remaining variable is irrelevant, so all clauses decided.
            self._count_leaf()
            return lower
        var, first = pick
        maximizing = self.is_max[bi]
        best: int | None = None
        for val in (first, not first):
            falsified, decided = self.assign(var, val)
            frame.new_falsified += falsified
            frame.undecided -= decided
            score = self.solve(frame, bi, alpha, beta)
            frame.new_falsified -= falsified
            frame.undecided += decided
            self.undo_one_var()
            if best is None or (score > best if maximizing else score < best):
                best = score
            if self.prune:
                if maximizing:
                    if best >= beta:
                        break
                    alpha = max(alpha, best)
                else:
                    if best <= alpha:
                        break
                    beta = min(beta, best)
        assert best is not None
        return best

    def _count_leaf(self) -> None:
        self.leaves += 1
        if self.leaves > self.budget:
            raise BudgetExceeded(
                f"evaluation exceeded the budget of {self.budget} leaf evaluations"
            )

    def run(self) -> int:
        n_blocks = len(self.is_max)
        block_vars: list[list[int]] = [[] for _ in range(n_blocks)]
        for var in range(len(self.block_of)):
            bi = self.block_of[var]
            if bi >= 0:
                block_vars[bi].append(var)
        # High static occupancy first: those variables constrain the most.
        for vs in block_vars:
            vs.sort(key=lambda v: -(self.pos_free[v] + self.neg_free[v]))
        for var in range(len(self.block_of)):
            if self.block_of[var] >= 0:
                self._note_counters(var)
        for ci, n_free in enumerate(self.free_count):
            if n_free == 1:
                self.unit_stack.append(ci)
        frame = _Frame(list(range(len(self.clause_lits))), block_vars, 0)
        frame.undecided = sum(1 for s in self.status if s == self._UNDECIDED)
        frame.split_mark = frame.undecided  # try a split immediately
        m = len(self.clause_lits)
        return self.solve(frame, 0, -1, m + 1)


def game_value(
    formula: PrenexFormula,
    budget: int = DEFAULT_BUDGET,
    *,
    prune: bool = True,
) -> GameValue:
    """Exact alternating max-min count of unsatisfied clauses.

    ``budget`` caps the number of leaf evaluations; exhausting it raises
    :class:`BudgetExceeded`.  Enumerating n variables costs at most 2^n
    leaves, so any formula with ``2**n <= budget`` is guaranteed to finish;
    pruning lets far larger instances finish too, without ever changing the
    result (``prune=False`` disables the alpha-beta cutoffs).
    """
    depth = 4 * formula.variable_count + 1000
    if sys.getrecursionlimit() < depth:
        sys.setrecursionlimit(depth)
    searcher = _Searcher(formula, budget, prune)
    return GameValue(searcher.run())


def verify_value_preservation(
    original: PrenexFormula,
    rewritten: PrenexFormula,
    budget: int = DEFAULT_BUDGET,
    *,
    decision_only: bool = False,
) -> bool:
    """Whether both formulas have the same game value (or the same
    zero-versus-nonzero verdict when ``decision_only``)."""
    a = game_value(original, budget).value
    b = game_value(rewritten, budget).value
    if decision_only:
        return (a == 0) == (b == 0)
    return a == b


# ---------------------------------------------------------------------------
# Polynomial solver for occurrence-2 existential clause sets


def solve_exists_occ2(
    clauses: Sequence[Clause], variables: Iterable[int]
) -> Assignment | None:
    """Satisfiability for purely existential clause sets with every variable
    occurring at most twice.  Returns a satisfying assignment or ``None``.

    Variables occurring once, or twice with the same sign, are satisfied and
    their clauses deleted (ascending variable id; the order cannot change
    the verdict).  In the residue every variable occurs once positively and
    once negatively; the residue is satisfiable iff the bipartite
    clause-variable incidence graph has a matching saturating the clauses,
    found by augmenting paths.
    """
    variable_list = sorted(set(variables))
    occurrences: dict[int, list[tuple[int, bool]]] = {v: [] for v in variable_list}
    for ci, clause in enumerate(clauses):
        for lit in clause:
            if lit.variable not in occurrences:
                raise OccurrenceBoundViolated(
                    f"clause variable {lit.variable} is not in the stated set"
                )
            occurrences[lit.variable].append((ci, lit.negated))
    for v, occ in occurrences.items():
        if len(occ) > 2:
            raise OccurrenceBoundViolated(f"variable {v} occurs {len(occ)} times")

    assignment: dict[int, bool] = {}
    alive = [True] * len(clauses)
    alive_occ = {
        v: [(ci, neg) for ci, neg in occ] for v, occ in occurrences.items()
    }
    changed = True
    while changed:
        changed = False
        for v in variable_list:
            if v in assignment:
                continue
            occ = [(ci, neg) for ci, neg in alive_occ[v] if alive[ci]]
            alive_occ[v] = occ
            signs = {neg for _, neg in occ}
            if len(occ) == 0:
                assignment[v] = False
                changed = True
            elif len(signs) == 1:
                neg = next(iter(signs))
                assignment[v] = not neg
                for ci, _ in occ:
                    alive[ci] = False
                changed = True

    residue = [ci for ci, a in enumerate(alive) if a]
    free_vars = [v for v in variable_list if v not in assignment]
    # Kuhn's augmenting-path matching: clauses on the left, variables right.
    adjacency = {
        ci: [lit.variable for lit in clauses[ci] if lit.variable in set(free_vars)]
        for ci in residue
    }
    matched_var_to_clause: dict[int, int] = {}

    def augment(ci: int, seen: set[int]) -> bool:
        for v in adjacency[ci]:
            if v in seen:
                continue
            seen.add(v)
            if v not in matched_var_to_clause or augment(
                matched_var_to_clause[v], seen
            ):
                matched_var_to_clause[v] = ci
                return True
        return False

    for ci in residue:
        if not augment(ci, set()):
            return None

    matched_clause_to_var = {ci: v for v, ci in matched_var_to_clause.items()}
    for ci in residue:
        v = matched_clause_to_var[ci]
        negated = next(lit.negated for lit in clauses[ci] if lit.variable == v)
        assignment[v] = not negated
    for v in free_vars:
        assignment.setdefault(v, False)

    result = Assignment(assignment)
    for ci, clause in enumerate(clauses):
        if not any(lit.holds(result[lit.variable]) for lit in clause):
            raise OracleError("internal error: matching produced a non-model")
    return result


def witness_lines(assignment: Assignment) -> str:
    """Certificate text for a witness: ``v <lit> ... 0`` lines."""
    lits = [v if assignment[v] else -v for v in sorted(assignment.domain)]
    return "v " + " ".join(map(str, lits)) + " 0\n" if lits else "v 0\n"


# ---------------------------------------------------------------------------
# Assignment-level checks for the universal gadget


def _gadget_records(trace: "ReductionTrace", formula: PrenexFormula):
    records = trace.gadgets
    if not records:
        raise TraceMismatch("trace carries no universal-gadget records")
    bound = formula.bound_variables()
    for record in records:
        for var in (*record.u_vars, *record.v_vars, *record.w_vars, *record.e_vars):
            if var not in bound:
                raise TraceMismatch(
                    f"trace variable {var} is not bound in the formula"
                )
    return records


def repair_outdegree(
    formula: PrenexFormula, trace: "ReductionTrace", assignment: Assignment
) -> Assignment:
    """Clear every gadget vertex that has two or more true outgoing edges.

    For each such vertex all its outgoing edge variables are set false.
    The result satisfies every outdegree clause and never increases the
    number of unsatisfied clauses (each repaired vertex wins back at least
    as many duplicated outdegree clauses as it can break elsewhere).
    """
    _check_total(formula, assignment)
    changes: dict[int, bool] = {}
    for record in _gadget_records(trace, formula):
        out_indices = record.graph.out_edge_indices()
        for vertex in record.graph.vertices():
            edge_vars = [record.e_vars[i] for i in out_indices[vertex]]
            true_edges = [e for e in edge_vars if assignment[e]]
            if len(true_edges) >= 2:
                for e in edge_vars:
                    changes[e] = False
    return assignment.updated(changes) if changes else assignment


def check_mismatch_bound(
    formula: PrenexFormula,
    trace: "ReductionTrace",
    assignment: Assignment,
    original_universals: Assignment,
) -> bool:
    """Check that output disagreements are paid for by broken gadget clauses.

    Preconditions: ``assignment`` satisfies every outdegree clause and gives
    every gadget input variable the value ``original_universals`` gives the
    gadget's owner.  With k gadget outputs disagreeing with their owner's
    value, at least k flow, output-degree, or edge-consistency clauses must
    be unsatisfied.
    """
    from .reduction import ClauseKind

    _check_total(formula, assignment)
    records = _gadget_records(trace, formula)
    for record in records:
        owner_value = original_universals[record.owner]
        for u in record.u_vars:
            if assignment[u] != owner_value:
                raise PreconditionViolated(
                    f"input variable {u} disagrees with owner {record.owner}"
                )
    counted = {
        ClauseKind.FLOW: 0,
        ClauseKind.OUTPUT_DEGREE: 0,
        ClauseKind.EDGE_CONSISTENCY: 0,
    }
    for clause in formula.clauses:
        tag = clause.provenance
        if tag is None:
            continue
        satisfied = any(lit.holds(assignment[lit.variable]) for lit in clause)
        if tag.kind is ClauseKind.OUTDEGREE and not satisfied:
            raise PreconditionViolated("an outdegree clause is unsatisfied")
        if tag.kind in counted and not satisfied:
            counted[tag.kind] += 1
    mismatches = 0
    for record in records:
        owner_value = original_universals[record.owner]
        mismatches += sum(
            1 for v in record.v_vars if assignment[v] != owner_value
        )
    return sum(counted.values()) >= mismatches


# ---------------------------------------------------------------------------
# Reference enumeration (kept simple on purpose; used for cross-checks)


def game_value_by_enumeration(formula: PrenexFormula) -> int:
    """Plain product enumeration over blocks; exponential, for small inputs."""

    def recurse(index: int, partial: dict[int, bool]) -> int:
        if index == len(formula.blocks):
            assignment = Assignment(dict(partial))
            return unsat_count(formula, assignment)
        block = formula.blocks[index]
        best: int | None = None
        maximizing = block.kind is Quantifier.UNIVERSAL
        for values in product((False, True), repeat=len(block.variables)):
            for v, val in zip(block.variables, values):
                partial[v] = val
            score = recurse(index + 1, partial)
            if best is None or (score > best if maximizing else score < best):
                best = score
        for v in block.variables:
            partial.pop(v, None)
        assert best is not None
        return best

    if not formula.blocks:
        return unsat_count(formula, Assignment({}))
    return recurse(0, {})
