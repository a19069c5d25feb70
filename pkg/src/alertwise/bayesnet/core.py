"""Discrete Bayesian network representation and structural validation.

A network is a set of named discrete variables plus one conditional
probability table per variable. CPT rows are indexed row-major over the
joint parent assignment, with the *first* parent varying slowest (the same
convention as ``itertools.product`` over the parent state lists).

Networks are immutable after construction. Construction performs only
cheap local checks; whole-network problems (cycles, dangling parents,
non-normalized rows) are reported by :func:`validate_network` so that
authoring errors can be surfaced all at once instead of failing fast on
the first one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from ..errors import InvalidNetworkError, UnknownStateError, UnknownVariableError

#: Tolerance for CPT row normalization checks.
ROW_SUM_TOL = 1e-9

#: Hard evidence: observed state label per variable name.
Evidence = Mapping[str, str]


@dataclass(frozen=True)
class DiscreteVariable:
    """A named variable with an ordered, closed set of state labels."""

    name: str
    states: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        if len(self.states) < 2:
            raise ValueError(f"variable {self.name!r} needs at least two states")
        if len(set(self.states)) != len(self.states):
            raise ValueError(f"variable {self.name!r} has duplicate state labels")

    @property
    def cardinality(self) -> int:
        return len(self.states)

    def state_index(self, label: str) -> int:
        try:
            return self.states.index(label)
        except ValueError:
            raise UnknownStateError(
                f"variable {self.name!r} has no state {label!r}"
            ) from None


@dataclass(frozen=True)
class Cpt:
    """Conditional probability table for one child variable.

    ``table`` has shape ``(n_rows, child_cardinality)`` where ``n_rows`` is
    the product of the parent cardinalities (1 for a root variable). The
    table is stored read-only; rows are *not* renormalized on construction.
    """

    child: str
    parents: tuple[str, ...]
    table: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "parents", tuple(self.parents))
        arr = np.asarray(self.table, dtype=float)
        if arr.ndim != 2:
            raise ValueError(f"CPT for {self.child!r} must be a 2-D row table")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "table", arr)

    @property
    def n_rows(self) -> int:
        return self.table.shape[0]


@dataclass(frozen=True)
class Posterior:
    """Exact posterior distribution over one variable's states."""

    variable: str
    states: tuple[str, ...]
    probs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        arr = np.asarray(self.probs, dtype=float).copy()
        arr.setflags(write=False)
        object.__setattr__(self, "probs", arr)

    def __getitem__(self, state: str) -> float:
        try:
            return float(self.probs[self.states.index(state)])
        except ValueError:
            raise UnknownStateError(
                f"posterior over {self.variable!r} has no state {state!r}"
            ) from None

    def as_dict(self) -> dict[str, float]:
        return {s: float(p) for s, p in zip(self.states, self.probs)}


@dataclass(frozen=True)
class Violation:
    """One structural problem found by validation."""

    kind: str
    message: str

    def __str__(self):
        return f"[{self.kind}] {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self):
        if self.ok:
            return "ok"
        return "; ".join(str(v) for v in self.violations)


class BayesNet:
    """Immutable discrete Bayesian network: variables plus one CPT each."""

    def __init__(self, variables: Iterable[DiscreteVariable], cpts: Iterable[Cpt]):
        self.variables: tuple[DiscreteVariable, ...] = tuple(variables)
        self.cpts: tuple[Cpt, ...] = tuple(cpts)
        self._var_by_name = {v.name: v for v in self.variables}
        self._cpt_by_child: dict[str, Cpt] = {}
        for cpt in self.cpts:
            # on duplicates keep the first; validation reports the clash
            self._cpt_by_child.setdefault(cpt.child, cpt)

    @property
    def variable_names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    def variable(self, name: str) -> DiscreteVariable:
        try:
            return self._var_by_name[name]
        except KeyError:
            raise UnknownVariableError(f"no variable named {name!r}") from None

    def cpt(self, child: str) -> Cpt:
        try:
            return self._cpt_by_child[child]
        except KeyError:
            raise UnknownVariableError(f"no CPT for variable {child!r}") from None

    def state_space_size(self) -> int:
        return math.prod(v.cardinality for v in self.variables)

    @cached_property
    def validation(self) -> ValidationReport:
        return validate_network(self)

    def require_valid(self):
        if not self.validation.ok:
            raise InvalidNetworkError(self.validation)

    def check_evidence(self, evidence: Evidence) -> dict[str, int]:
        """Resolve evidence to state indices, rejecting unknown names/states."""
        resolved = {}
        for name, state in evidence.items():
            var = self.variable(name)
            resolved[name] = var.state_index(state)
        return resolved

    def __repr__(self):
        return f"BayesNet({len(self.variables)} variables)"


def parent_row_index(cards: Sequence[int], assignment: Sequence[int]) -> int:
    """Row index for a joint parent assignment (first parent slowest)."""
    idx = 0
    for card, a in zip(cards, assignment):
        idx = idx * card + a
    return idx


def validate_network(net: BayesNet) -> ValidationReport:
    """Report every structural violation in ``net``.

    Checks: duplicate variables, exactly one CPT per variable, parent
    references resolve, CPT row counts and widths match the declared
    cardinalities, rows are probability vectors normalized within
    ``ROW_SUM_TOL``, and the parent graph is acyclic.
    """
    out: list[Violation] = []
    names = [v.name for v in net.variables]
    seen: set[str] = set()
    for n in names:
        if n in seen:
            out.append(Violation("duplicate-variable", f"variable {n!r} declared twice"))
        seen.add(n)

    children = [c.child for c in net.cpts]
    for child in children:
        if child not in seen:
            out.append(Violation("unknown-child", f"CPT child {child!r} is not a declared variable"))
    counts: dict[str, int] = {}
    for child in children:
        counts[child] = counts.get(child, 0) + 1
    for child, k in counts.items():
        if k > 1:
            out.append(Violation("duplicate-cpt", f"variable {child!r} has {k} CPTs"))
    for n in names:
        if n not in counts:
            out.append(Violation("missing-cpt", f"variable {n!r} has no CPT"))

    for cpt in net.cpts:
        if cpt.child not in net._var_by_name:
            continue
        child_var = net.variable(cpt.child)
        dangling = [p for p in cpt.parents if p not in net._var_by_name]
        for p in dangling:
            out.append(
                Violation("dangling-parent", f"CPT for {cpt.child!r} references unknown parent {p!r}")
            )
        if dangling:
            continue
        expect_rows = math.prod(net.variable(p).cardinality for p in cpt.parents)
        if cpt.table.shape[0] != expect_rows:
            out.append(
                Violation(
                    "row-count",
                    f"CPT for {cpt.child!r} has {cpt.table.shape[0]} rows, expected {expect_rows}",
                )
            )
            continue
        if cpt.table.shape[1] != child_var.cardinality:
            out.append(
                Violation(
                    "row-shape",
                    f"CPT rows for {cpt.child!r} have width {cpt.table.shape[1]}, "
                    f"expected {child_var.cardinality}",
                )
            )
            continue
        if np.any(cpt.table < 0.0) or np.any(cpt.table > 1.0):
            bad = int(np.argwhere((cpt.table < 0.0) | (cpt.table > 1.0))[0][0])
            out.append(
                Violation("out-of-range", f"CPT for {cpt.child!r} row {bad} has entries outside [0, 1]")
            )
        sums = cpt.table.sum(axis=1)
        for i in np.flatnonzero(np.abs(sums - 1.0) > ROW_SUM_TOL):
            out.append(
                Violation(
                    "non-normalized",
                    f"CPT for {cpt.child!r} row {int(i)} sums to {sums[i]:.12g}, not 1",
                )
            )

    out.extend(_find_cycles(net))
    return ValidationReport(tuple(out))


def _find_cycles(net: BayesNet) -> list[Violation]:
    """Detect directed cycles among resolvable parent edges (iterative DFS)."""
    adj: dict[str, list[str]] = {v.name: [] for v in net.variables}
    for cpt in net.cpts:
        if cpt.child in adj:
            adj[cpt.child] = [p for p in cpt.parents if p in adj]
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {n: WHITE for n in adj}
    for start in sorted(adj):
        if color[start] != WHITE:
            continue
        stack = [(start, iter(adj[start]))]
        color[start] = GRAY
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if color[nxt] == GRAY:
                    return [Violation("cycle", f"dependency cycle through {nxt!r}")]
                if color[nxt] == WHITE:
                    color[nxt] = GRAY
                    stack.append((nxt, iter(adj[nxt])))
                    advanced = True
                    break
            if not advanced:
                color[node] = BLACK
                stack.pop()
    return []
