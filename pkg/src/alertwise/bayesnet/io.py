"""JSON network format.

Document layout (see ``docs/formats.md`` for the full schema and
``models/example_net.json`` for a canonical file)::

    {
      "description": "free text, ignored",
      "variables": [{"name": "A", "states": ["t", "f"]}, ...],
      "cpts": [
        {"child": "A", "parents": [], "rows": {"": [0.3, 0.7]}},
        {"child": "B", "parents": ["A"],
         "rows": {"t": [0.9, 0.1], "f": [0.2, 0.8]}}
      ],
      "temporal_links": [
        {"from": "A", "to": "A", "rows": {"t": [...], "f": [...]}}
      ]
    }

Row keys are the parent state labels joined with ``|`` in declared parent
order (the single empty key for roots). A document containing
``temporal_links`` loads as a :class:`DbnSpec`, otherwise as a
:class:`BayesNet`. Loading validates; malformed or non-normalized files
are rejected at parse time.
"""

from __future__ import annotations

import itertools
import json
from pathlib import Path
from typing import Any

import numpy as np

from ..errors import SchemaError
from .core import BayesNet, Cpt, DiscreteVariable
from .dbn import DbnSpec, TemporalLink

KEY_SEP = "|"


def _require(doc: dict, key: str, kind, where: str):
    if key not in doc:
        raise SchemaError(f"{where}: missing required key {key!r}")
    value = doc[key]
    if not isinstance(value, kind):
        raise SchemaError(f"{where}: key {key!r} must be {kind.__name__}")
    return value


def _parse_variables(doc: dict) -> list[DiscreteVariable]:
    variables = []
    for i, entry in enumerate(_require(doc, "variables", list, "network")):
        where = f"variables[{i}]"
        if not isinstance(entry, dict):
            raise SchemaError(f"{where}: must be an object")
        name = _require(entry, "name", str, where)
        states = _require(entry, "states", list, where)
        if not all(isinstance(s, str) for s in states):
            raise SchemaError(f"{where}: states must be strings")
        for s in states:
            if KEY_SEP in s:
                raise SchemaError(f"{where}: state {s!r} may not contain {KEY_SEP!r}")
        try:
            variables.append(DiscreteVariable(name, tuple(states)))
        except ValueError as exc:
            raise SchemaError(f"{where}: {exc}") from None
    return variables


def _rows_to_table(
    rows: dict, parents: list[str], states_of: dict[str, tuple[str, ...]], child_card: int, where: str
) -> np.ndarray:
    for p in parents:
        if p not in states_of:
            raise SchemaError(f"{where}: unknown parent {p!r}")
    combos = list(itertools.product(*(states_of[p] for p in parents)))
    keys = [KEY_SEP.join(c) for c in combos]
    extra = set(rows) - set(keys)
    if extra:
        raise SchemaError(f"{where}: unexpected row key {sorted(extra)[0]!r}")
    table = np.empty((len(keys), child_card))
    for r, key in enumerate(keys):
        if key not in rows:
            raise SchemaError(f"{where}: missing row for parent states {key!r}")
        row = rows[key]
        if not isinstance(row, list) or len(row) != child_card:
            raise SchemaError(
                f"{where}: row {key!r} must be a list of {child_card} probabilities"
            )
        table[r] = row
    return table


def network_from_dict(doc: dict, where: str = "network") -> BayesNet:
    variables = _parse_variables(doc)
    states_of = {v.name: v.states for v in variables}
    cards = {v.name: v.cardinality for v in variables}
    cpts = []
    for i, entry in enumerate(_require(doc, "cpts", list, where)):
        loc = f"cpts[{i}]"
        if not isinstance(entry, dict):
            raise SchemaError(f"{loc}: must be an object")
        child = _require(entry, "child", str, loc)
        parents = _require(entry, "parents", list, loc)
        rows = _require(entry, "rows", dict, loc)
        if child not in cards:
            raise SchemaError(f"{loc}: unknown child {child!r}")
        table = _rows_to_table(rows, parents, states_of, cards[child], loc)
        cpts.append(Cpt(child, tuple(parents), table))
    net = BayesNet(variables, cpts)
    report = net.validation
    if not report.ok:
        raise SchemaError(f"{where}: invalid network: {report}")
    return net


def dbn_from_dict(doc: dict) -> DbnSpec:
    net = network_from_dict(doc, where="slice")
    states_of = {v.name: v.states for v in net.variables}
    links = []
    for i, entry in enumerate(_require(doc, "temporal_links", list, "dbn")):
        loc = f"temporal_links[{i}]"
        if not isinstance(entry, dict):
            raise SchemaError(f"{loc}: must be an object")
        src = _require(entry, "from", str, loc)
        dst = _require(entry, "to", str, loc)
        rows = _require(entry, "rows", dict, loc)
        if src not in states_of or dst not in states_of:
            raise SchemaError(f"{loc}: link endpoints must be slice variables")
        parents = list(net.cpt(dst).parents) + [src]
        table = _rows_to_table(rows, parents, states_of, len(states_of[dst]), loc)
        links.append(TemporalLink(src, dst, table))
    spec = DbnSpec(net, tuple(links))
    report = spec.validate()
    if not report.ok:
        raise SchemaError(f"dbn: invalid spec: {report}")
    return spec


def load_network(path: str | Path) -> BayesNet | DbnSpec:
    """Load a network document; DBN specs are recognized by ``temporal_links``."""
    doc = load_document(path)
    if "temporal_links" in doc:
        return dbn_from_dict(doc)
    return network_from_dict(doc)


def load_document(path: str | Path) -> dict[str, Any]:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise SchemaError(f"{path}: top level must be an object")
    return doc


def network_to_dict(net: BayesNet) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "variables": [{"name": v.name, "states": list(v.states)} for v in net.variables],
        "cpts": [],
    }
    states_of = {v.name: v.states for v in net.variables}
    for cpt in net.cpts:
        combos = itertools.product(*(states_of[p] for p in cpt.parents))
        rows = {
            KEY_SEP.join(c): [float(x) for x in cpt.table[r]]
            for r, c in enumerate(combos)
        }
        doc["cpts"].append(
            {"child": cpt.child, "parents": list(cpt.parents), "rows": rows}
        )
    return doc


def save_network(net: BayesNet, path: str | Path):
    Path(path).write_text(json.dumps(network_to_dict(net), indent=1) + "\n")
