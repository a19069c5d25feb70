"""Two-slice temporal extension: slice template plus Markov links.

A :class:`DbnSpec` is a per-time-step network template together with a
set of temporal links. Each link names a source variable in slice ``t-1``
and a destination variable in slice ``t`` and carries the destination's
conditional table for slices 1 onward; slice 0 keeps the template's own
CPTs as priors. ``unroll`` stamps out ``horizon`` copies with variable
names suffixed ``@0 .. @{horizon-1}``.

Link tables are row-major over (destination's within-slice parents...,
source-at-previous-slice), first parent slowest — the same row convention
as ordinary CPTs with the temporal parent appended last.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import InvalidNetworkError
from .core import BayesNet, Cpt, ValidationReport, Violation, validate_network

SLICE_SEP = "@"


def slice_name(name: str, t: int) -> str:
    return f"{name}{SLICE_SEP}{t}"


@dataclass(frozen=True)
class TemporalLink:
    """Markov dependency: ``src`` at slice t-1 conditions ``dst`` at slice t."""

    src: str
    dst: str
    table: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.table, dtype=float).copy()
        arr.setflags(write=False)
        object.__setattr__(self, "table", arr)


@dataclass(frozen=True)
class DbnSpec:
    """Slice template plus temporal links (at most one per destination)."""

    slice_net: BayesNet
    links: tuple[TemporalLink, ...]

    def __post_init__(self):
        object.__setattr__(self, "links", tuple(self.links))

    def validate(self) -> ValidationReport:
        out = list(validate_network(self.slice_net).violations)
        names = set(self.slice_net.variable_names)
        seen_dst: set[str] = set()
        for link in self.links:
            for end, which in ((link.src, "source"), (link.dst, "destination")):
                if end not in names:
                    out.append(
                        Violation(
                            "dangling-temporal-link",
                            f"temporal link {which} {end!r} is not a slice variable",
                        )
                    )
            if link.dst in seen_dst:
                out.append(
                    Violation(
                        "duplicate-temporal-link",
                        f"variable {link.dst!r} has more than one temporal link",
                    )
                )
            seen_dst.add(link.dst)
            if link.src not in names or link.dst not in names:
                continue
            dst_cpt = self.slice_net.cpt(link.dst)
            expect_rows = math.prod(
                self.slice_net.variable(p).cardinality for p in dst_cpt.parents
            ) * self.slice_net.variable(link.src).cardinality
            dst_card = self.slice_net.variable(link.dst).cardinality
            if link.table.ndim != 2 or link.table.shape != (expect_rows, dst_card):
                out.append(
                    Violation(
                        "temporal-row-count",
                        f"temporal table for {link.dst!r} has shape "
                        f"{tuple(link.table.shape)}, expected ({expect_rows}, {dst_card})",
                    )
                )
                continue
            sums = link.table.sum(axis=1)
            for i in np.flatnonzero(np.abs(sums - 1.0) > 1e-9):
                out.append(
                    Violation(
                        "non-normalized",
                        f"temporal table for {link.dst!r} row {int(i)} sums to "
                        f"{sums[i]:.12g}, not 1",
                    )
                )
        return ValidationReport(tuple(out))

    def require_valid(self):
        report = self.validate()
        if not report.ok:
            raise InvalidNetworkError(report)


def unroll(spec: DbnSpec, horizon: int) -> BayesNet:
    """Stamp out ``horizon`` slices of the template as one network.

    Slice 0 keeps the template CPTs; later slices swap in the temporal
    table for every linked variable, with the previous-slice source
    appended after the variable's within-slice parents.
    """
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    spec.require_valid()
    link_by_dst = {link.dst: link for link in spec.links}

    variables = []
    cpts = []
    for t in range(horizon):
        for var in spec.slice_net.variables:
            variables.append(type(var)(slice_name(var.name, t), var.states))
        for cpt in spec.slice_net.cpts:
            link = link_by_dst.get(cpt.child) if t > 0 else None
            if link is None:
                cpts.append(
                    Cpt(
                        slice_name(cpt.child, t),
                        tuple(slice_name(p, t) for p in cpt.parents),
                        cpt.table,
                    )
                )
            else:
                parents = tuple(slice_name(p, t) for p in cpt.parents) + (
                    slice_name(link.src, t - 1),
                )
                cpts.append(Cpt(slice_name(cpt.child, t), parents, link.table))
    net = BayesNet(variables, cpts)
    net.require_valid()
    return net
