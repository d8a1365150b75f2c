"""Domain types and the scenario file schema.

A scenario is a JSON document with top-level keys ``branches``, ``nodes``,
``plans`` and (optionally) ``defaults``.  Branches carry a fixed lead time
and a discrete bandwidth distribution; compute nodes carry an output/input
data ratio and a discrete resource distribution; transit nodes forward data
unchanged; a sink terminates every plan.  All types are immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

import json
from bisect import bisect_left
from dataclasses import dataclass, field
from math import fsum

from .errors import (
    DanglingReference,
    PmfSumViolation,
    SchemaViolation,
    StructuralViolation,
)

PROB_TOL = 1e-9

NODE_KINDS = ("compute", "transit", "sink")


@dataclass(frozen=True)
class Pmf:
    """Probability mass function over non-negative integer capacity levels.

    ``entries`` is stored sorted by level.  ``survival(k)`` returns
    Pr(level >= k); it is 1 at k=0 and non-increasing in k.
    """

    entries: tuple[tuple[int, float], ...]
    _survival: tuple[float, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        seen = set()
        for level, prob in self.entries:
            if not isinstance(level, int) or isinstance(level, bool) or level < 0:
                raise SchemaViolation(f"pmf level {level!r} is not a non-negative integer")
            if level in seen:
                raise SchemaViolation(f"pmf level {level} appears twice")
            seen.add(level)
            if not isinstance(prob, (int, float)) or prob != prob or prob < 0:
                raise SchemaViolation(f"pmf probability {prob!r} for level {level} is negative or not a number")
        if not self.entries:
            raise SchemaViolation("pmf has no entries")
        total = fsum(p for _, p in self.entries)
        if abs(total - 1.0) > PROB_TOL:
            raise PmfSumViolation(f"pmf probabilities sum to {total!r}, not 1")
        ordered = tuple(sorted(self.entries))
        object.__setattr__(self, "entries", ordered)
        # suffix sums: _survival[i] = Pr(level >= entries[i].level)
        tail = []
        acc: list[float] = []
        for _, p in reversed(ordered):
            acc.append(p)
            tail.append(fsum(acc))
        object.__setattr__(self, "_survival", tuple(reversed(tail)))

    @classmethod
    def from_dict(cls, mapping) -> Pmf:
        entries = []
        for key, prob in mapping.items():
            try:
                level = int(key)
            except (TypeError, ValueError):
                raise SchemaViolation(f"pmf level {key!r} is not an integer") from None
            if isinstance(key, float) or (isinstance(key, str) and "." in key):
                raise SchemaViolation(f"pmf level {key!r} is not an integer")
            entries.append((level, float(prob)))
        return cls(tuple(entries))

    def to_dict(self) -> dict[str, float]:
        return {str(level): prob for level, prob in self.entries}

    @property
    def levels(self) -> tuple[int, ...]:
        return tuple(level for level, _ in self.entries)

    @property
    def max_level(self) -> int:
        return self.entries[-1][0]

    def prob(self, level: int) -> float:
        i = bisect_left(self.levels, level)
        if i < len(self.entries) and self.entries[i][0] == level:
            return self.entries[i][1]
        return 0.0

    def survival(self, level: int) -> float:
        """Pr(capacity >= level); equals 1 for level 0."""
        if level < 0:
            raise ValueError("survival level must be >= 0")
        i = bisect_left(self.levels, level)
        return self._survival[i] if i < len(self._survival) else 0.0

    def support(self) -> tuple[tuple[int, float], ...]:
        """Entries with strictly positive probability, level-ascending."""
        return tuple((l, p) for l, p in self.entries if p > 0.0)


def survival(pmf: Pmf, level: int) -> float:
    """Module-level alias for :meth:`Pmf.survival`."""
    return pmf.survival(level)


@dataclass(frozen=True)
class BranchSpec:
    """A transmission link: fixed lead time plus stochastic bandwidth."""

    id: str
    lead_time: float
    bandwidth: Pmf

    def __post_init__(self):
        if self.lead_time < 0:
            raise SchemaViolation(f"branch {self.id}: lead_time must be >= 0")


@dataclass(frozen=True)
class NodeSpec:
    """A compute, transit, or sink node.

    Compute nodes carry an output/input ratio and a resource distribution;
    ``output_override`` (optional) pins the node's output size to an absolute
    value instead of the ratio product.  Transit and sink nodes carry neither.
    """

    id: str
    kind: str
    ratio: float | None = None
    resource: Pmf | None = None
    output_override: float | None = None

    def __post_init__(self):
        if self.kind not in NODE_KINDS:
            raise SchemaViolation(f"node {self.id}: unknown kind {self.kind!r}")
        if self.kind == "compute":
            if self.ratio is None or self.resource is None:
                raise SchemaViolation(f"node {self.id}: compute nodes need ratio and resource")
            if self.ratio <= 0:
                raise SchemaViolation(f"node {self.id}: ratio must be > 0")
            if self.output_override is not None and self.output_override < 0:
                raise SchemaViolation(f"node {self.id}: output_override must be >= 0")
        else:
            if self.ratio is not None or self.resource is not None or self.output_override is not None:
                raise SchemaViolation(f"node {self.id}: {self.kind} nodes carry no ratio/resource")

    @property
    def computes(self) -> bool:
        return self.kind == "compute"


@dataclass(frozen=True)
class DeploymentPlan:
    """An alternating node/branch chain from a source device to a sink.

    ``path`` holds resolved specs: node, branch, node, ..., branch, node.
    """

    name: str
    path: tuple[NodeSpec | BranchSpec, ...]

    def __post_init__(self):
        if len(self.path) < 3 or len(self.path) % 2 == 0:
            raise StructuralViolation(f"plan {self.name}: path must be node, branch, ..., node")
        for i, item in enumerate(self.path):
            want_node = i % 2 == 0
            if want_node != isinstance(item, NodeSpec):
                raise StructuralViolation(f"plan {self.name}: path does not alternate node/branch at position {i}")
        if self.path[-1].kind != "sink":
            raise StructuralViolation(f"plan {self.name}: path must end at a sink")
        for node in self.path[:-1:2]:
            if node.kind == "sink":
                raise StructuralViolation(f"plan {self.name}: sink {node.id} in path interior")

    @property
    def branches(self) -> tuple[BranchSpec, ...]:
        return tuple(self.path[1::2])  # type: ignore[arg-type]

    @property
    def chain(self) -> tuple[NodeSpec, ...]:
        """Non-sink nodes in path order (one per branch)."""
        return tuple(self.path[:-1:2])  # type: ignore[arg-type]

    @property
    def compute_nodes(self) -> tuple[NodeSpec, ...]:
        return tuple(n for n in self.chain if n.computes)

    def path_ids(self) -> list[str]:
        return [item.id for item in self.path]


@dataclass(frozen=True)
class StateVector:
    """One joint capacity assignment: x per branch, y per compute node."""

    x: tuple[int, ...]
    y: tuple[int, ...]

    def concat(self) -> tuple[int, ...]:
        return self.x + self.y

    def dominates(self, other: StateVector) -> bool:
        return all(a >= b for a, b in zip(self.concat(), other.concat()))


@dataclass(frozen=True)
class Scenario:
    """A validated scenario: branch/node catalogue plus deployment plans."""

    branches: tuple[BranchSpec, ...]
    nodes: tuple[NodeSpec, ...]
    plans: tuple[DeploymentPlan, ...]
    defaults: dict | None = None

    def branch(self, branch_id: str) -> BranchSpec:
        for b in self.branches:
            if b.id == branch_id:
                return b
        raise KeyError(branch_id)

    def node(self, node_id: str) -> NodeSpec:
        for n in self.nodes:
            if n.id == node_id:
                return n
        raise KeyError(node_id)

    def plan(self, name: str) -> DeploymentPlan:
        for p in self.plans:
            if p.name == name:
                return p
        raise KeyError(name)

    @property
    def default_input_size(self) -> float | None:
        return None if self.defaults is None else self.defaults.get("input_size")

    @property
    def default_deadline(self) -> float | None:
        return None if self.defaults is None else self.defaults.get("deadline")


def _require(mapping, key, kinds, where):
    if key not in mapping:
        raise SchemaViolation(f"{where}: missing field {key!r}")
    value = mapping[key]
    if not isinstance(value, kinds):
        raise SchemaViolation(f"{where}: field {key!r} has wrong type")
    return value


def parse_scenario(text: str) -> Scenario:
    """Parse and fully validate a scenario document.

    Raises one of the :mod:`edgerel.errors` scenario classes; a rejected
    document never yields a partially constructed Scenario.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaViolation(f"scenario is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise SchemaViolation("scenario root must be an object")

    raw_branches = _require(doc, "branches", list, "scenario")
    raw_nodes = _require(doc, "nodes", list, "scenario")
    raw_plans = _require(doc, "plans", list, "scenario")

    branches = []
    for entry in raw_branches:
        if not isinstance(entry, dict):
            raise SchemaViolation("branch entry must be an object")
        bid = _require(entry, "id", str, "branch")
        lead = _require(entry, "lead_time", (int, float), f"branch {bid}")
        bw = _require(entry, "bandwidth", dict, f"branch {bid}")
        branches.append(BranchSpec(bid, float(lead), Pmf.from_dict(bw)))

    nodes = []
    for entry in raw_nodes:
        if not isinstance(entry, dict):
            raise SchemaViolation("node entry must be an object")
        nid = _require(entry, "id", str, "node")
        kind = _require(entry, "kind", str, f"node {nid}")
        ratio = entry.get("ratio")
        resource = entry.get("resource")
        override = entry.get("output_override")
        if resource is not None and not isinstance(resource, dict):
            raise SchemaViolation(f"node {nid}: resource must be an object")
        nodes.append(NodeSpec(
            nid, kind,
            ratio=None if ratio is None else float(ratio),
            resource=None if resource is None else Pmf.from_dict(resource),
            output_override=None if override is None else float(override),
        ))

    ids = [b.id for b in branches] + [n.id for n in nodes]
    dupes = {i for i in ids if ids.count(i) > 1}
    if dupes:
        raise SchemaViolation(f"duplicate ids: {sorted(dupes)}")
    by_id: dict[str, NodeSpec | BranchSpec] = {b.id: b for b in branches}
    by_id.update({n.id: n for n in nodes})

    if not raw_plans:
        raise SchemaViolation("scenario must define at least one plan")
    plans = []
    for entry in raw_plans:
        if not isinstance(entry, dict):
            raise SchemaViolation("plan entry must be an object")
        name = _require(entry, "name", str, "plan")
        raw_path = _require(entry, "path", list, f"plan {name}")
        path = []
        for i, ref in enumerate(raw_path):
            if not isinstance(ref, str):
                raise SchemaViolation(f"plan {name}: path entries must be id strings")
            if ref not in by_id:
                raise DanglingReference(f"plan {name}: unknown id {ref!r} at position {i}")
            item = by_id[ref]
            want_node = i % 2 == 0
            if want_node != isinstance(item, NodeSpec):
                raise StructuralViolation(f"plan {name}: path does not alternate node/branch at {ref!r}")
            path.append(item)
        plans.append(DeploymentPlan(name, tuple(path)))
    names = [p.name for p in plans]
    if len(set(names)) != len(names):
        raise SchemaViolation("duplicate plan names")

    defaults = doc.get("defaults")
    if defaults is not None:
        if not isinstance(defaults, dict):
            raise SchemaViolation("defaults must be an object")
        for key in defaults:
            if key not in ("input_size", "deadline"):
                raise SchemaViolation(f"defaults: unknown key {key!r}")
            value = defaults[key]
            if not isinstance(value, (int, float)) or value <= 0:
                raise SchemaViolation(f"defaults: {key} must be a positive number")
        defaults = dict(defaults)

    return Scenario(tuple(branches), tuple(nodes), tuple(plans), defaults)


def render_scenario(scenario: Scenario) -> str:
    """Serialize a Scenario back to the documented JSON form.

    ``parse_scenario(render_scenario(s)) == s`` for every valid scenario.
    """
    doc: dict = {
        "branches": [
            {"id": b.id, "lead_time": b.lead_time, "bandwidth": b.bandwidth.to_dict()}
            for b in scenario.branches
        ],
        "nodes": [],
        "plans": [{"name": p.name, "path": p.path_ids()} for p in scenario.plans],
    }
    for n in scenario.nodes:
        entry: dict = {"id": n.id, "kind": n.kind}
        if n.computes:
            entry["ratio"] = n.ratio
            entry["resource"] = n.resource.to_dict()
            if n.output_override is not None:
                entry["output_override"] = n.output_override
        doc["nodes"].append(entry)
    if scenario.defaults is not None:
        doc["defaults"] = scenario.defaults
    return json.dumps(doc, indent=2)


def load_scenario(path) -> Scenario:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_scenario(fh.read())
