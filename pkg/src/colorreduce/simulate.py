"""Synchronous broadcast simulator with set or multiset message delivery.

A node program is four deterministic functions.  ``init`` maps
(own initial color, m, delta, n) to an opaque state.  Before any
communication the engine calls ``step`` once with an empty received
collection; the message it returns is the node's round-1 broadcast.
In every round t each node receives the collection of byte-string
messages sent by its neighbors -- a frozenset under set delivery (equal
messages collapse), a sorted tuple under multiset delivery (counts are
kept, sender identity is not) -- and ``step(state, received)`` returns
the new state plus the broadcast for round t+1.  After ``round_budget``
rounds ``finalize(state)`` yields the node's output color.

The engine is a pure fold over rounds: identical inputs produce
byte-identical traces, and node steps of one round may be evaluated in
any order (they only read the previous round's messages).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from hashlib import blake2b
from typing import Any, Callable

from .errors import ParameterError, SimulationError
from .graphs import ColorAssignment, ColoredGraph
from .views import (MULTISET, SET, View, canonical_decode, canonical_encode,
                    extract_all_views)


@dataclass(frozen=True)
class NodeProgram:
    """Deterministic per-node state machine run by the engine."""

    init: Callable[[int, int, int, int], Any]
    step: Callable[[Any, Any], tuple[Any, bytes]]
    finalize: Callable[[Any], int]
    round_budget: Callable[[int, int, int], int]
    name: str = "program"
    meta: dict | None = None


def _digest_state(state) -> str:
    if isinstance(state, View):
        return state.digest.hex()
    if isinstance(state, bytes):
        raw = state
    else:
        raw = repr(state).encode()
    return blake2b(raw, digest_size=16).hexdigest()


@dataclass
class SimTrace:
    """Per-round, per-node record of (state digest, sent, received)."""

    kind: str
    rounds: list = field(default_factory=list)

    def record(self, states, sent, received):
        self.rounds.append(
            tuple(
                (_digest_state(states[v]), sent[v], tuple(sorted(received[v])))
                for v in range(len(states))
            )
        )

    def sent_at(self, round_index, node) -> bytes:
        """Message broadcast by `node` in 1-based round `round_index`."""
        return self.rounds[round_index - 1][node][1]

    def state_digest_at(self, round_index, node) -> str:
        return self.rounds[round_index - 1][node][0]

    def to_jsonl(self, fh):
        for t, row in enumerate(self.rounds, start=1):
            for v, (digest, sent, received) in enumerate(row):
                fh.write(json.dumps({
                    "round": t,
                    "node": v,
                    "state": digest,
                    "sent": sent.hex(),
                    "received": [r.hex() for r in received],
                }, sort_keys=True))
                fh.write("\n")


def run(g: ColoredGraph, prog: NodeProgram, kind=SET, trace: bool = False):
    """Execute prog synchronously on g; returns (ColorAssignment, SimTrace|None).

    Under set delivery each distinct byte-string reaches a node at most
    once per round no matter how many neighbors sent it.
    """
    if kind not in (SET, MULTISET):
        raise ParameterError(f"unknown delivery kind {kind!r}")
    n, adj = g.n, g.adjacency
    budget = prog.round_budget(g.m, g.delta_cap, n)
    states = []
    for v in range(n):
        try:
            states.append(prog.init(g.psi[v], g.m, g.delta_cap, n))
        except Exception as exc:  # noqa: BLE001 - context-wrapped
            raise SimulationError(v, 0, exc) from exc
    sim_trace = SimTrace(kind) if trace else None
    if budget > 0:
        empty = frozenset() if kind == SET else ()
        pending = [None] * n
        for v in range(n):
            try:
                states[v], pending[v] = prog.step(states[v], empty)
            except Exception as exc:  # noqa: BLE001
                raise SimulationError(v, 0, exc) from exc
        for t in range(1, budget + 1):
            sent = pending
            if kind == SET:
                received = [frozenset(sent[u] for u in adj[v]) for v in range(n)]
            else:
                received = [tuple(sorted(sent[u] for u in adj[v])) for v in range(n)]
            pending = [None] * n
            for v in range(n):
                try:
                    states[v], pending[v] = prog.step(states[v], received[v])
                except Exception as exc:  # noqa: BLE001
                    raise SimulationError(v, t, exc) from exc
            if sim_trace is not None:
                sim_trace.record(states, sent, received)
    colors = []
    for v in range(n):
        try:
            colors.append(prog.finalize(states[v]))
        except Exception as exc:  # noqa: BLE001
            raise SimulationError(v, budget, exc) from exc
    return ColorAssignment(tuple(colors), max(colors)), sim_trace


def full_information_program(r: int) -> NodeProgram:
    """Forward everything every round; after r rounds the state is the
    node's r-view under whichever delivery semantics the run uses.

    The output color is a deterministic token of the final view (views of
    adjacent nodes always differ, so the token coloring is proper).
    """
    if r < 0:
        raise ParameterError("rounds must be >= 0")

    def init(color, m, delta, n):
        return color

    def step(state, received):
        if isinstance(state, int):
            # priming call: received is empty, its type tells the semantics
            kind = SET if isinstance(received, frozenset) else MULTISET
            state = View.leaf(kind, state)
            return state, canonical_encode(state)
        children = (canonical_decode(msg) for msg in received)
        state = View.make(state.kind, state, children)
        return state, canonical_encode(state)

    def finalize(state):
        if isinstance(state, int):
            return state
        return 1 + int.from_bytes(state.digest, "big")

    return NodeProgram(init, step, finalize, lambda m, d, n: r,
                       name=f"full-information[{r}]")


@dataclass
class CorrespondenceReport:
    """Outcome of checking that a program is a proper function of views."""

    rounds: int
    kind: str
    nodes_checked: int = 0
    edges_checked: int = 0
    distinct_views: int = 0
    determinism_violations: list = field(default_factory=list)
    properness_violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.determinism_violations and not self.properness_violations


def check_correspondence(prog: NodeProgram, r: int, m: int, delta: int,
                         instances, kind=SET) -> CorrespondenceReport:
    """Verify on the given instances that (i) nodes with equal r-views get
    equal outputs (otherwise prog is not expressible as a view function)
    and (ii) outputs differ across every realized edge, i.e. the induced
    labeling of observed r-views is proper.  Violations are report
    content, not errors."""
    report = CorrespondenceReport(rounds=r, kind=kind)
    seen: dict[View, tuple[int, int, int]] = {}
    for g_idx, g in enumerate(instances):
        if g.m != m or g.delta_cap != delta:
            raise ParameterError(
                f"instance {g_idx} has (m={g.m}, delta={g.delta_cap}), expected ({m}, {delta})"
            )
        if prog.round_budget(m, delta, g.n) != r:
            raise ParameterError(
                f"program budget {prog.round_budget(m, delta, g.n)} != r={r}"
            )
        phi, _ = run(g, prog, kind=kind)
        node_views = extract_all_views(g, r, kind)
        for v in range(g.n):
            report.nodes_checked += 1
            view = node_views[v]
            out = phi[v]
            prev = seen.get(view)
            if prev is None:
                seen[view] = (out, g_idx, v)
            elif prev[0] != out:
                report.determinism_violations.append({
                    "view": view.digest.hex(),
                    "first": {"instance": prev[1], "node": prev[2], "output": prev[0]},
                    "second": {"instance": g_idx, "node": v, "output": out},
                })
        for u, v in g.edges():
            report.edges_checked += 1
            if phi[u] == phi[v]:
                report.properness_violations.append({
                    "instance": g_idx,
                    "edge": [u, v],
                    "output": phi[u],
                    "views": [node_views[u].digest.hex(), node_views[v].digest.hex()],
                })
    report.distinct_views = len(seen)
    return report
