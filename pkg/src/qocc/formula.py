"""Prenex-CNF quantified Boolean formulas: data model, QDIMACS I/O, profiling.

Variables are positive integers.  A formula couples an ordered quantifier
prefix (blocks of universally or existentially bound variables, outermost
first) with a clause list.  Clauses are kept exactly as written: repeated
literals and tautological clauses are legal and never simplified away, so
every rewriting pass stays auditable clause for clause.

All values are immutable after construction and safe to share across
threads; every operation here is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import TYPE_CHECKING, Iterable, Iterator, Mapping

if TYPE_CHECKING:  # pragma: no cover - import cycle guard, typing only
    from .reduction import ClauseTag

__all__ = [
    "FormulaError",
    "QdimacsSyntaxError",
    "BindingError",
    "EmptyClauseError",
    "Quantifier",
    "Literal",
    "Clause",
    "QuantifierBlock",
    "PrenexFormula",
    "OccurrenceProfile",
    "parse_qdimacs",
    "serialize_qdimacs",
    "occurrence_profile",
    "normalize_blocks",
]


class FormulaError(Exception):
    """Base class for formula-layer failures."""


class QdimacsSyntaxError(FormulaError):
    """Input text is not well-formed QDIMACS."""


class BindingError(FormulaError):
    """A variable is bound twice, bound out of range, or used while unbound."""


class EmptyClauseError(FormulaError):
    """Zero-literal clauses are rejected rather than given a meaning."""


class Quantifier(Enum):
    UNIVERSAL = "a"
    EXISTENTIAL = "e"


@dataclass(frozen=True)
class Literal:
    """A variable or its negation."""

    variable: int
    negated: bool = False

    def __post_init__(self) -> None:
        if self.variable < 1:
            raise ValueError(f"variable ids start at 1, got {self.variable}")

    @classmethod
    def from_int(cls, lit: int) -> "Literal":
        if lit == 0:
            raise ValueError("0 is the clause terminator, not a literal")
        return cls(abs(lit), lit < 0)

    def to_int(self) -> int:
        return -self.variable if self.negated else self.variable

    def holds(self, value: bool) -> bool:
        """Truth of this literal when its variable takes ``value``."""
        return value != self.negated


@dataclass(frozen=True)
class Clause:
    """An ordered disjunction of literals.  Repeats are kept as written.

    ``provenance`` carries the rewriting tag attached by transformation
    passes; it is ignored by equality so that round-tripping through text
    compares structurally.
    """

    literals: tuple[Literal, ...]
    provenance: "ClauseTag | None" = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.literals, tuple):
            object.__setattr__(self, "literals", tuple(self.literals))
        if not self.literals:
            raise EmptyClauseError("clauses must contain at least one literal")

    @classmethod
    def from_ints(cls, lits: Iterable[int], provenance: "ClauseTag | None" = None) -> "Clause":
        return cls(tuple(Literal.from_int(lit) for lit in lits), provenance)

    def to_ints(self) -> tuple[int, ...]:
        return tuple(lit.to_int() for lit in self.literals)

    def variables(self) -> set[int]:
        return {lit.variable for lit in self.literals}

    def with_provenance(self, tag: "ClauseTag | None") -> "Clause":
        return replace(self, provenance=tag)

    def __len__(self) -> int:
        return len(self.literals)

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.literals)


@dataclass(frozen=True)
class QuantifierBlock:
    """One maximal run of equally-quantified variables in the prefix."""

    kind: Quantifier
    variables: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.variables, tuple):
            object.__setattr__(self, "variables", tuple(self.variables))
        if not self.variables:
            raise ValueError("quantifier blocks must bind at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise BindingError(f"block binds a variable twice: {self.variables}")
        if any(v < 1 for v in self.variables):
            raise ValueError("variable ids start at 1")


@dataclass(frozen=True)
class PrenexFormula:
    """A quantifier prefix plus a clause list.

    ``variable_count`` is the declared id ceiling (QDIMACS header value);
    ids may be sparse, and bound-but-unused variables are legal.
    """

    blocks: tuple[QuantifierBlock, ...]
    clauses: tuple[Clause, ...]
    variable_count: int

    def __post_init__(self) -> None:
        if not isinstance(self.blocks, tuple):
            object.__setattr__(self, "blocks", tuple(self.blocks))
        if not isinstance(self.clauses, tuple):
            object.__setattr__(self, "clauses", tuple(self.clauses))
        if self.variable_count < 0:
            raise ValueError("variable_count must be nonnegative")
        bound: set[int] = set()
        for block in self.blocks:
            for v in block.variables:
                if v in bound:
                    raise BindingError(f"variable {v} is bound twice")
                if v > self.variable_count:
                    raise BindingError(
                        f"variable {v} exceeds the declared count {self.variable_count}"
                    )
                bound.add(v)
        for idx, clause in enumerate(self.clauses):
            for lit in clause:
                if lit.variable not in bound:
                    raise BindingError(
                        f"clause {idx} uses unbound variable {lit.variable}"
                    )

    def bound_variables(self) -> frozenset[int]:
        return frozenset(v for block in self.blocks for v in block.variables)

    def binding(self) -> dict[int, Quantifier]:
        """Map every bound variable to its quantifier kind."""
        return {v: block.kind for block in self.blocks for v in block.variables}

    def block_index(self) -> dict[int, int]:
        """Map every bound variable to the index of its block."""
        return {v: i for i, block in enumerate(self.blocks) for v in block.variables}


@dataclass(frozen=True)
class OccurrenceProfile:
    """Literal-occurrence counts (repeats included) and size maxima."""

    per_variable: Mapping[int, int]
    max_universal: int
    max_existential: int
    max_clause_size: int


def parse_qdimacs(text: str) -> PrenexFormula:
    """Parse QDIMACS text into a validated formula.

    Accepts comment lines (``c ...``) and blank lines anywhere before data
    they would interrupt.  Quantifier lines must precede all clauses, one
    block per line, outermost first.  Free variables (used but unbound) are
    rejected; bound-but-unused variables are fine.
    """
    header: tuple[int, int] | None = None
    blocks: list[QuantifierBlock] = []
    clauses: list[Clause] = []

    def to_int(token: str, lineno: int) -> int:
        try:
            return int(token)
        except ValueError:
            raise QdimacsSyntaxError(f"line {lineno}: malformed token {token!r}") from None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if header is not None:
                raise QdimacsSyntaxError(f"line {lineno}: duplicate 'p cnf' header")
            if len(tokens) != 4 or tokens[1] != "cnf":
                raise QdimacsSyntaxError(f"line {lineno}: expected 'p cnf <vars> <clauses>'")
            nvars, nclauses = to_int(tokens[2], lineno), to_int(tokens[3], lineno)
            if nvars < 0 or nclauses < 0:
                raise QdimacsSyntaxError(f"line {lineno}: negative header counts")
            header = (nvars, nclauses)
            continue
        if header is None:
            raise QdimacsSyntaxError(f"line {lineno}: expected 'p cnf' header before data")
        if tokens[0] in ("a", "e"):
            if clauses:
                raise QdimacsSyntaxError(
                    f"line {lineno}: quantifier line after clauses; formula must be prenex"
                )
            body = [to_int(t, lineno) for t in tokens[1:]]
            if not body or body[-1] != 0:
                raise QdimacsSyntaxError(f"line {lineno}: quantifier line must end with 0")
            if any(v <= 0 for v in body[:-1]):
                raise QdimacsSyntaxError(f"line {lineno}: nonpositive variable in prefix")
            if len(body) == 1:
                raise QdimacsSyntaxError(f"line {lineno}: empty quantifier block")
            blocks.append(QuantifierBlock(Quantifier(tokens[0]), tuple(body[:-1])))
            continue
        body = [to_int(t, lineno) for t in tokens]
        if body[-1] != 0:
            raise QdimacsSyntaxError(f"line {lineno}: clause line must end with 0")
        if any(v == 0 for v in body[:-1]):
            raise QdimacsSyntaxError(f"line {lineno}: embedded 0 inside a clause line")
        if len(body) == 1:
            raise EmptyClauseError(f"line {lineno}: empty clause")
        clauses.append(Clause.from_ints(body[:-1]))

    if header is None:
        raise QdimacsSyntaxError("missing 'p cnf' header")
    nvars, nclauses = header
    if len(clauses) != nclauses:
        raise QdimacsSyntaxError(
            f"header declares {nclauses} clauses, found {len(clauses)}"
        )
    return PrenexFormula(tuple(blocks), tuple(clauses), nvars)


def serialize_qdimacs(formula: PrenexFormula) -> str:
    """Emit canonical QDIMACS text: one block per line, one clause per line.

    ``parse_qdimacs(serialize_qdimacs(f))`` structurally equals ``f``.
    """
    lines = [f"p cnf {formula.variable_count} {len(formula.clauses)}"]
    for block in formula.blocks:
        lines.append(f"{block.kind.value} {' '.join(map(str, block.variables))} 0")
    for clause in formula.clauses:
        lines.append(f"{' '.join(map(str, clause.to_ints()))} 0")
    return "\n".join(lines) + "\n"


def occurrence_profile(formula: PrenexFormula) -> OccurrenceProfile:
    """Count literal occurrences per bound variable, repeats included."""
    counts: dict[int, int] = {v: 0 for v in formula.bound_variables()}
    max_clause = 0
    for clause in formula.clauses:
        max_clause = max(max_clause, len(clause))
        for lit in clause:
            counts[lit.variable] += 1
    binding = formula.binding()
    max_uni = max(
        (c for v, c in counts.items() if binding[v] is Quantifier.UNIVERSAL), default=0
    )
    max_exi = max(
        (c for v, c in counts.items() if binding[v] is Quantifier.EXISTENTIAL), default=0
    )
    return OccurrenceProfile(counts, max_uni, max_exi, max_clause)


def normalize_blocks(formula: PrenexFormula) -> PrenexFormula:
    """Merge adjacent same-kind blocks and drop unused universal variables.

    A universal variable with zero occurrences cannot influence any clause,
    so removing it from the prefix preserves the game value.  Unused
    existential variables are kept (harmless, and they may be fresh ids a
    later pass will populate).
    """
    counts = occurrence_profile(formula).per_variable
    merged: list[tuple[Quantifier, list[int]]] = []
    for block in formula.blocks:
        variables = list(block.variables)
        if block.kind is Quantifier.UNIVERSAL:
            variables = [v for v in variables if counts[v] > 0]
        if not variables:
            continue
        if merged and merged[-1][0] is block.kind:
            merged[-1][1].extend(variables)
        else:
            merged.append((block.kind, variables))
    blocks = tuple(QuantifierBlock(kind, tuple(vs)) for kind, vs in merged)
    return PrenexFormula(blocks, formula.clauses, formula.variable_count)
