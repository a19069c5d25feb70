"""Exact inference: variable elimination plus a brute-force cross-check.

:func:`infer` runs variable elimination with a min-degree ordering
(lexicographic tie-break, so results and intermediate factor shapes are
reproducible across runs). :func:`joint_enumeration` answers the same
query by materializing the full joint table with numpy fancy indexing; it
deliberately shares no factor algebra with the elimination path so the
two can check each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import InconsistentEvidenceError, StateSpaceCapError
from .core import BayesNet, Cpt, Evidence, Posterior

#: Default joint-state-space cap for brute-force enumeration.
ENUMERATION_CAP = 2**20


@dataclass(frozen=True)
class _Factor:
    """A nonnegative table over a tuple of named variable axes."""

    vars: tuple[str, ...]
    array: np.ndarray


def _expand(f: _Factor, out_vars: tuple[str, ...], cards: dict[str, int]) -> np.ndarray:
    """View ``f.array`` broadcastable over ``out_vars`` axes."""
    perm = [f.vars.index(v) for v in out_vars if v in f.vars]
    arr = f.array.transpose(perm)
    # transposed axes already appear in out_vars order, so a C-order reshape
    # that interleaves size-1 axes re-labels them without moving data
    shape = tuple(cards[v] if v in f.vars else 1 for v in out_vars)
    return arr.reshape(shape)


def _multiply(a: _Factor, b: _Factor, cards: dict[str, int]) -> _Factor:
    out_vars = a.vars + tuple(v for v in b.vars if v not in a.vars)
    return _Factor(out_vars, _expand(a, out_vars, cards) * _expand(b, out_vars, cards))


def _marginalize(f: _Factor, var: str) -> _Factor:
    ax = f.vars.index(var)
    return _Factor(f.vars[:ax] + f.vars[ax + 1 :], f.array.sum(axis=ax))


def _reduce(f: _Factor, var: str, idx: int) -> _Factor:
    ax = f.vars.index(var)
    return _Factor(f.vars[:ax] + f.vars[ax + 1 :], f.array.take(idx, axis=ax))


def _cpt_factor(net: BayesNet, cpt: Cpt) -> _Factor:
    shape = tuple(net.variable(p).cardinality for p in cpt.parents) + (
        net.variable(cpt.child).cardinality,
    )
    return _Factor(cpt.parents + (cpt.child,), cpt.table.reshape(shape))


def _min_degree_order(scopes: list[tuple[str, ...]], hidden: set[str]) -> list[str]:
    """Eliminate smallest-induced-neighborhood variables first; ties by name."""
    neighbors: dict[str, set[str]] = {v: set() for v in hidden}
    for scope in scopes:
        for v in scope:
            if v in neighbors:
                neighbors[v].update(scope)
    for v, ns in neighbors.items():
        ns.discard(v)
    order = []
    remaining = set(hidden)
    while remaining:
        v = min(remaining, key=lambda x: (len(neighbors[x] & remaining), x))
        order.append(v)
        remaining.remove(v)
        # connect v's remaining neighbors (induced-graph update)
        ns = neighbors[v] & remaining
        for u in ns:
            neighbors[u].update(ns)
            neighbors[u].discard(u)
    return order


def infer(net: BayesNet, evidence: Evidence, query: str) -> Posterior:
    """Exact posterior p(query | evidence) by variable elimination.

    Raises :class:`InconsistentEvidenceError` when the evidence has zero
    probability, and lookup errors for unknown variables or states. The
    network must validate.
    """
    net.require_valid()
    ev = net.check_evidence(evidence)
    qvar = net.variable(query)
    cards = {v.name: v.cardinality for v in net.variables}

    factors = []
    for cpt in net.cpts:
        f = _cpt_factor(net, cpt)
        for name, idx in ev.items():
            if name in f.vars and name != query:
                f = _reduce(f, name, idx)
        factors.append(f)

    hidden = {v for f in factors for v in f.vars} - {query}
    for v in _min_degree_order([f.vars for f in factors], hidden):
        group = [f for f in factors if v in f.vars]
        rest = [f for f in factors if v not in f.vars]
        prod = group[0]
        for g in group[1:]:
            prod = _multiply(prod, g, cards)
        factors = rest + [_marginalize(prod, v)]

    result = _Factor((), np.array(1.0))
    for f in factors:
        result = _multiply(result, f, cards)
    # every variable owns a CPT, so the surviving product is over the query axis
    vec = result.array.reshape(qvar.cardinality)
    if query in ev:
        mask = np.zeros(qvar.cardinality)
        mask[ev[query]] = 1.0
        vec = vec * mask
    z = float(vec.sum())
    if z <= 0.0:
        raise InconsistentEvidenceError(
            f"evidence has zero probability (query {query!r})"
        )
    return Posterior(query, qvar.states, vec / z)


def joint_enumeration(
    net: BayesNet, evidence: Evidence, query: str, cap: int = ENUMERATION_CAP
) -> Posterior:
    """Exact posterior by summation over the fully materialized joint.

    Testing oracle for :func:`infer`; refuses with
    :class:`StateSpaceCapError` when the joint exceeds ``cap`` cells.
    """
    net.require_valid()
    ev = net.check_evidence(evidence)
    qvar = net.variable(query)
    names = list(net.variable_names)
    cards = [net.variable(n).cardinality for n in names]
    size = math.prod(cards)
    if size > cap:
        raise StateSpaceCapError(f"joint has {size} cells, cap is {cap}")

    grids = np.indices(cards, dtype=np.int32)
    pos = {n: i for i, n in enumerate(names)}
    joint = np.ones(cards)
    for cpt in net.cpts:
        shape = tuple(net.variable(p).cardinality for p in cpt.parents) + (
            net.variable(cpt.child).cardinality,
        )
        table = np.asarray(cpt.table).reshape(shape)
        sel = tuple(grids[pos[v]] for v in cpt.parents + (cpt.child,))
        joint = joint * table[sel]
    for name, idx in ev.items():
        joint = joint * (grids[pos[name]] == idx)

    axes = tuple(i for i, n in enumerate(names) if n != query)
    vec = joint.sum(axis=axes)
    z = float(vec.sum())
    if z <= 0.0:
        raise InconsistentEvidenceError(
            f"evidence has zero probability (query {query!r})"
        )
    return Posterior(query, qvar.states, vec / z)
