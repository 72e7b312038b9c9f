"""Tick-based executor of the staged dataflow graph.

The time model is one global integer clock.  A stage group's enable
asserts at the tick when every node of its trigger stage has raised done
(enables are evaluated before fires within a tick, so firing at the enable
tick reads just-published values legally).  A node fires once at its
enable tick and raises done `latency` ticks later.  Reading an input whose
producer is not done yet returns the slot's reset value (zero) and is
recorded as a violation -- with synchronization disabled every node is
enabled at tick 0, which reproduces the premature-execution failure mode
on any design deeper than a single stage.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum

from .fixedpoint import FixedComplex, ScalingMode, butterfly_fixed, cmult_fixed
from .flowgraph import FftGraph, bit_reverse, elaborate
from .twiddle import twiddle_table


class SyncMode(Enum):
    STAGE_CHAINED = "chained"
    DISABLED = "off"


@dataclass(frozen=True)
class SimConfig:
    width: int = 16
    butterfly_latency: int = 1
    cmult_latency: int = 1
    scaling: ScalingMode = ScalingMode.PER_STAGE_HALVING
    sync: SyncMode = SyncMode.STAGE_CHAINED
    seed: int = 0
    jitter: int = 0          # max extra ticks of per-node latency, seeded
    natural_order: bool = True

    def __post_init__(self):
        if self.butterfly_latency < 1 or self.cmult_latency < 1:
            raise ValueError("node latencies must be >= 1 tick")
        if self.jitter < 0:
            raise ValueError("jitter must be >= 0")


@dataclass(frozen=True)
class NodeTiming:
    enable_tick: int
    fire_tick: int
    done_tick: int


@dataclass(frozen=True)
class Violation:
    node: str
    stage: str          # top-level stage tag of the offending node
    port: str
    read_tick: int
    valid_tick: int     # when the producer's done actually asserted


@dataclass
class SimTrace:
    timing: dict[str, NodeTiming]
    violations: list[Violation]
    done_tick: int

    def render(self) -> str:
        lines = [f"design done at tick {self.done_tick}", "node            enable  fire  done"]
        for nid, t in self.timing.items():
            lines.append(f"{nid:<15s} {t.enable_tick:>6d} {t.fire_tick:>5d} {t.done_tick:>5d}")
        lines.append(f"violations: {len(self.violations)}")
        for v in self.violations:
            lines.append(
                f"  {v.node}.{v.port} read at tick {v.read_tick}, "
                f"valid only from tick {v.valid_tick} (stage {v.stage})"
            )
        return "\n".join(lines) + "\n"


_INPUT_PORTS = {"butterfly": ("a", "b"), "cmult": ("a",)}


def simulate(
    g: FftGraph,
    x: list[FixedComplex],
    cfg: SimConfig | None = None,
) -> tuple[list[FixedComplex], SimTrace]:
    """Execute the graph on x; returns (outputs, trace).

    Graphs holding atomic sub-transform nodes are elaborated first: only
    butterflies and multipliers are tick-executable units.
    """
    cfg = cfg or SimConfig()
    if len(x) != g.n:
        raise ValueError(f"input length {len(x)} != transform size {g.n}")
    if any(s.width != cfg.width for s in x):
        raise ValueError(f"input samples must all have width {cfg.width}")
    if not g.is_primitive:
        g = elaborate(g.n)

    rng = random.Random(cfg.seed)
    latency: dict[str, int] = {}
    for nid in sorted(n.id for n in g.nodes.values() if n.kind in _INPUT_PORTS):
        base = (
            cfg.butterfly_latency
            if g.nodes[nid].kind == "butterfly"
            else cfg.cmult_latency
        )
        latency[nid] = base + (rng.randint(0, cfg.jitter) if cfg.jitter else 0)

    zero = FixedComplex(0, 0, cfg.width)
    value: dict[tuple[str, str], FixedComplex] = {}
    done: dict[str, int] = {}
    timing: dict[str, NodeTiming] = {}
    violations: list[Violation] = []

    for i, nid in enumerate(g.inputs):
        value[(nid, "q")] = x[i]
        done[nid] = 0

    in_edges = g.in_edges()
    group_of = {(grp.scope, grp.stage): grp for grp in g.stages}

    for grp in g.stages:
        if cfg.sync is SyncMode.DISABLED or grp.trigger is None:
            enable = 0
        else:
            enable = max(done[nid] for nid in group_of[grp.trigger].node_ids)
        for nid in grp.node_ids:
            node = g.nodes[nid]
            fire = enable
            operands = []
            for port in _INPUT_PORTS[node.kind]:
                src, src_port = in_edges[nid][port]
                if done[src] > fire:
                    violations.append(
                        Violation(nid, node.top_stage, port, fire, done[src])
                    )
                    operands.append(zero)
                else:
                    operands.append(value[(src, src_port)])
            if node.kind == "butterfly":
                s, d, _ = butterfly_fixed(operands[0], operands[1], cfg.scaling)
                value[(nid, "sum")] = s
                value[(nid, "diff")] = d
            else:
                w = twiddle_table(node.size, cfg.width)[node.k]
                value[(nid, "p")] = cmult_fixed(operands[0], w)
            done[nid] = fire + latency[nid]
            timing[nid] = NodeTiming(enable, fire, done[nid])

    design_done = max(done.values())

    # Final outputs are sampled once the design-level done asserts, so the
    # output read itself is never premature; broken schedules show up through
    # the values the intermediate nodes latched.
    raw = [value[in_edges[nid]["d"]] for nid in g.outputs]
    if cfg.natural_order:
        bits = g.n.bit_length() - 1
        y: list[FixedComplex] = [zero] * g.n
        for p, sample in enumerate(raw):
            y[bit_reverse(p, bits)] = sample
    else:
        y = raw

    return y, SimTrace(timing, violations, design_done)


@dataclass(frozen=True)
class StageViolations:
    stage: str
    count: int
    first_node: str
    first_tick: int


@dataclass
class ViolationReport:
    total: int
    by_stage: list[StageViolations]

    def render(self) -> str:
        if self.total == 0:
            return "no precedence violations\n"
        lines = [f"{self.total} premature read(s)"]
        for s in self.by_stage:
            lines.append(
                f"  stage {s.stage}: {s.count} violation(s), "
                f"first at {s.first_node} (tick {s.first_tick})"
            )
        return "\n".join(lines) + "\n"


def detect_violations(trace: SimTrace) -> ViolationReport:
    """Group premature reads by top-level stage; first offender per stage."""
    per_stage: dict[str, list[Violation]] = {}
    for v in trace.violations:
        per_stage.setdefault(v.stage, []).append(v)
    by_stage = []
    for stage in sorted(per_stage):
        vs = per_stage[stage]
        first = min(vs, key=lambda v: (v.read_tick, v.node))
        by_stage.append(StageViolations(stage, len(vs), first.node, first.read_tick))
    return ViolationReport(len(trace.violations), by_stage)
