"""Staged dataflow graph of the iterative radix-2 DIF decomposition.

An n-point transform is one level of structure: n/2 butterflies on input
pairs (i, i+n/2) (stage tag "1A"), n/2 complex multiplications of the
difference paths by rotation constants (stage tag "1B"), and two parallel
n/2-point sub-transforms fed by the sums and the rotated differences
(stage tag "2").  `build_graph` stops there; `elaborate` recurses until
only butterflies and multipliers remain.  Sub-transform outputs are kept
in raw concatenated order, where position p carries bin bit_reverse(p).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter

from .twiddle import is_power_of_two


class GraphError(ValueError):
    """Malformed graph: cycles or edges that defy the stage order."""


@dataclass(frozen=True)
class Node:
    id: str
    kind: str            # input | output | butterfly | cmult | subfft
    stage: str           # in | 1A | 1B | 2 | out (local to the node's scope)
    scope: str           # "" for the top level, else dotted path like "0.1"
    size: int            # transform size of the scope this node belongs to
    k: int | None = None      # twiddle index (cmult only)
    m: int | None = None      # sub-transform size (subfft only)
    index: int | None = None  # sample index (input/output only)

    @property
    def top_stage(self) -> str:
        """Stage as seen from the top level; everything nested is stage 2."""
        if self.kind in ("input", "output"):
            return self.stage
        return self.stage if self.scope == "" else "2"


@dataclass(frozen=True)
class Edge:
    src: str
    src_port: str
    dst: str
    dst_port: str


@dataclass(frozen=True)
class StageGroup:
    """Nodes that share one enable, plus the stage whose completion gates it."""

    scope: str
    stage: str
    node_ids: tuple[str, ...]
    trigger: tuple[str, str] | None  # (scope, stage) or None = external enable


@dataclass(frozen=True)
class PrecedenceConstraint:
    scope: str
    after: str
    enables: str
    after_nodes: tuple[str, ...]
    enabled_nodes: tuple[str, ...]


@dataclass
class FftGraph:
    n: int
    nodes: dict[str, Node]
    edges: list[Edge]
    stages: list[StageGroup]
    inputs: list[str]
    outputs: list[str]

    @property
    def is_primitive(self) -> bool:
        return not any(node.kind == "subfft" for node in self.nodes.values())

    def nodes_of_kind(self, kind: str) -> list[Node]:
        return [node for node in self.nodes.values() if node.kind == kind]

    def in_edges(self) -> dict[str, dict[str, tuple[str, str]]]:
        """dst id -> {dst port: (src id, src port)}."""
        table: dict[str, dict[str, tuple[str, str]]] = {}
        for e in self.edges:
            table.setdefault(e.dst, {})[e.dst_port] = (e.src, e.src_port)
        return table


def bit_reverse(value: int, bits: int) -> int:
    out = 0
    for i in range(bits):
        if value & (1 << i):
            out |= 1 << (bits - 1 - i)
    return out


def output_permutation(n: int) -> list[int]:
    """Bin index carried at each raw output position: perm[p] = bit_reverse(p)."""
    _check_size(n)
    bits = n.bit_length() - 1
    return [bit_reverse(p, bits) for p in range(n)]


def _check_size(n: int) -> None:
    if not is_power_of_two(n) or n < 2:
        raise ValueError(f"transform size must be a power of two >= 2, got {n}")


class _Builder:
    def __init__(self, n: int):
        self.n = n
        self.nodes: dict[str, Node] = {}
        self.edges: list[Edge] = []
        self.stages: list[StageGroup] = []

    def add_node(self, node: Node) -> str:
        self.nodes[node.id] = node
        return node.id

    def connect(self, src: tuple[str, str], dst: tuple[str, str]) -> None:
        self.edges.append(Edge(src[0], src[1], dst[0], dst[1]))

    def build_scope(
        self,
        m: int,
        scope: str,
        sources: list[tuple[str, str]],
        trigger: tuple[str, str] | None,
        deep: bool,
    ) -> list[tuple[str, str]]:
        """Wire one decomposition level; returns raw-order output sources."""
        prefix = "".join(f"s{part}." for part in scope.split(".") if part)

        if m == 2:
            bf = self.add_node(Node(f"{prefix}bf0", "butterfly", "1A", scope, m))
            self.connect(sources[0], (bf, "a"))
            self.connect(sources[1], (bf, "b"))
            self.stages.append(StageGroup(scope, "1A", (bf,), trigger))
            return [(bf, "sum"), (bf, "diff")]

        half = m // 2
        bf_ids = []
        for i in range(half):
            bf = self.add_node(Node(f"{prefix}bf{i}", "butterfly", "1A", scope, m))
            self.connect(sources[i], (bf, "a"))
            self.connect(sources[i + half], (bf, "b"))
            bf_ids.append(bf)
        self.stages.append(StageGroup(scope, "1A", tuple(bf_ids), trigger))

        cm_ids = []
        for i in range(half):
            cm = self.add_node(Node(f"{prefix}cm{i}", "cmult", "1B", scope, m, k=i))
            self.connect((bf_ids[i], "diff"), (cm, "a"))
            cm_ids.append(cm)
        self.stages.append(StageGroup(scope, "1B", tuple(cm_ids), (scope, "1A")))

        sums = [(bf, "sum") for bf in bf_ids]
        prods = [(cm, "p") for cm in cm_ids]
        sub_trigger = (scope, "1B")

        if not deep:
            subs = []
            for j, feeds in enumerate((sums, prods)):
                sub = self.add_node(
                    Node(f"{prefix}sub{j}", "subfft", "2", scope, m, m=half)
                )
                for i, src in enumerate(feeds):
                    self.connect(src, (sub, f"in{i}"))
                subs.append(sub)
            self.stages.append(StageGroup(scope, "2", tuple(subs), sub_trigger))
            out0 = [(subs[0], f"out{i}") for i in range(half)]
            out1 = [(subs[1], f"out{i}") for i in range(half)]
            return out0 + out1

        child0 = self.build_scope(half, _child_scope(scope, 0), sums, sub_trigger, True)
        child1 = self.build_scope(half, _child_scope(scope, 1), prods, sub_trigger, True)
        return child0 + child1


def _child_scope(scope: str, j: int) -> str:
    return f"{scope}.{j}" if scope else str(j)


def _build(n: int, deep: bool) -> FftGraph:
    _check_size(n)
    b = _Builder(n)
    inputs, sources = [], []
    for i in range(n):
        nid = b.add_node(Node(f"in{i}", "input", "in", "", n, index=i))
        inputs.append(nid)
        sources.append((nid, "q"))

    raw = b.build_scope(n, "", sources, None, deep)

    outputs = []
    for p, src in enumerate(raw):
        nid = b.add_node(Node(f"out{p}", "output", "out", "", n, index=p))
        b.connect(src, (nid, "d"))
        outputs.append(nid)

    return FftGraph(n, b.nodes, b.edges, b.stages, inputs, outputs)


def build_graph(n: int) -> FftGraph:
    """One decomposition level; sub-transforms stay as atomic subfft nodes."""
    return _build(n, deep=False)


def elaborate(n: int) -> FftGraph:
    """Fully recursive graph: butterflies and multipliers only."""
    return _build(n, deep=True)


# ---------------------------------------------------------------------------
# Validation and constraint extraction
# ---------------------------------------------------------------------------

_STAGE_ORDER = {"in": -1, "1A": 0, "1B": 1, "2": 2, "out": 3}


def validate_precedence(g: FftGraph) -> list[PrecedenceConstraint]:
    """Check stage discipline and return the stage-completion constraints.

    Per decomposition level: the multipliers start only when every butterfly
    of that level is done, and the two sub-transforms start only when every
    multiplier is done.  Nodes inside one stage must not exchange data.
    """
    _check_acyclic(g)

    group_index = {(grp.scope, grp.stage): i for i, grp in enumerate(g.stages)}
    node_group: dict[str, int] = {}
    for i, grp in enumerate(g.stages):
        for nid in grp.node_ids:
            node_group[nid] = i

    for e in g.edges:
        src, dst = g.nodes[e.src], g.nodes[e.dst]
        if src.kind == "input" or dst.kind == "output":
            continue
        si, di = node_group[e.src], node_group[e.dst]
        if si == di:
            raise GraphError(
                f"data edge {e.src}->{e.dst} inside stage "
                f"({src.scope!r}, {src.stage}); stage members must be independent"
            )
        if si > di:
            raise GraphError(f"data edge {e.src}->{e.dst} runs against the stage order")
        if src.scope == dst.scope and _STAGE_ORDER[src.stage] >= _STAGE_ORDER[dst.stage]:
            raise GraphError(f"data edge {e.src}->{e.dst} does not advance the stage order")

    constraints: list[PrecedenceConstraint] = []
    by_scope: dict[str, dict[str, StageGroup]] = {}
    scope_order: list[str] = []
    for grp in g.stages:
        if grp.scope not in by_scope:
            by_scope[grp.scope] = {}
            scope_order.append(grp.scope)
        by_scope[grp.scope][grp.stage] = grp

    for scope in scope_order:
        groups = by_scope[scope]
        if "1B" not in groups:
            continue  # a bare butterfly level has nothing to sequence
        constraints.append(
            PrecedenceConstraint(
                scope,
                "1A",
                "1B",
                groups["1A"].node_ids,
                groups["1B"].node_ids,
            )
        )
        if "2" in groups:
            stage2_nodes = groups["2"].node_ids
        else:
            # elaborated: stage 2 is the entry stage of both child scopes
            stage2_nodes = tuple(
                nid
                for grp in g.stages
                if grp.trigger == (scope, "1B")
                for nid in grp.node_ids
            )
        constraints.append(
            PrecedenceConstraint(scope, "1B", "2", groups["1B"].node_ids, stage2_nodes)
        )
    return constraints


def _check_acyclic(g: FftGraph) -> None:
    ts = TopologicalSorter({nid: set() for nid in g.nodes})
    for e in g.edges:
        ts.add(e.dst, e.src)
    try:
        ts.prepare()
    except CycleError as exc:
        raise GraphError(f"graph contains a cycle: {exc.args[1]}") from exc


def topological_order(g: FftGraph) -> list[str]:
    ts = TopologicalSorter({nid: set() for nid in g.nodes})
    for e in g.edges:
        ts.add(e.dst, e.src)
    try:
        return list(ts.static_order())
    except CycleError as exc:
        raise GraphError(f"graph contains a cycle: {exc.args[1]}") from exc


# ---------------------------------------------------------------------------
# Exports
# ---------------------------------------------------------------------------

def render_text(g: FftGraph) -> str:
    """Structured-text dump: nodes, stages, edges, constraints."""
    lines = [f"fft-graph n={g.n} primitive={g.is_primitive}"]
    lines.append("nodes:")
    for node in g.nodes.values():
        extra = ""
        if node.k is not None:
            extra = f" k={node.k}"
        if node.m is not None:
            extra = f" m={node.m}"
        if node.index is not None:
            extra = f" index={node.index}"
        lines.append(
            f"  {node.id} kind={node.kind} stage={node.stage} "
            f"scope={node.scope or '-'} size={node.size}{extra}"
        )
    lines.append("stages:")
    for grp in g.stages:
        trig = f"{grp.trigger[0] or '-'}/{grp.trigger[1]}" if grp.trigger else "external"
        lines.append(
            f"  {grp.scope or '-'}/{grp.stage} after={trig} nodes={' '.join(grp.node_ids)}"
        )
    lines.append("edges:")
    for e in g.edges:
        lines.append(f"  {e.src}.{e.src_port} -> {e.dst}.{e.dst_port}")
    lines.append("constraints:")
    for c in validate_precedence(g):
        lines.append(f"  scope={c.scope or '-'}: all {c.after} done => {c.enables} enabled")
    return "\n".join(lines) + "\n"


def render_dot(g: FftGraph) -> str:
    """Graphviz dot with one cluster per stage group."""
    shapes = {
        "input": "plaintext",
        "output": "plaintext",
        "butterfly": "box",
        "cmult": "ellipse",
        "subfft": "box3d",
    }
    lines = ["digraph fft {", "  rankdir=LR;"]
    for i, grp in enumerate(g.stages):
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f'    label="{grp.scope or "top"}/{grp.stage}";')
        for nid in grp.node_ids:
            node = g.nodes[nid]
            label = nid if node.k is None else f"{nid}\\nk={node.k}"
            lines.append(f'    "{nid}" [shape={shapes[node.kind]}, label="{label}"];')
        lines.append("  }")
    for nid in g.inputs + g.outputs:
        lines.append(f'  "{nid}" [shape=plaintext];')
    for e in g.edges:
        lines.append(f'  "{e.src}" -> "{e.dst}" [label="{e.src_port}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
