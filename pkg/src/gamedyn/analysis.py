"""Termination, fairness and equilibria analyses over dynamics graphs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .dynamics import BeliefGraph, DynamicsGraph
from .graphs import Digraph, shortest_path, strongly_connected_components


@dataclass(frozen=True)
class CycleWitness:
    path_to_cycle: tuple  # node sequence, may be empty; ends just before the cycle
    cycle: tuple  # non-empty closed walk: last -> first is an edge

    def validate(self, g: Digraph) -> bool:
        seq = list(self.path_to_cycle) + list(self.cycle)
        ok = all(b in g.successors(a) for a, b in zip(seq, seq[1:]))
        return ok and self.cycle and self.cycle[0] in g.successors(self.cycle[-1])


SWITCHES = "switches-infinitely-often"
CANNOT_SWITCH = "recurrently-cannot-switch"
NON_SWITCHER = "enabled-non-switcher"


@dataclass(frozen=True)
class FairnessReport:
    fair: bool  # True iff an infinite fair path exists
    witness: Optional[CycleWitness]
    per_player: Mapping[int, str]

    def describe(self, dg: DynamicsGraph) -> str:
        lines = ["fair cycle found" if self.fair else "no fair cycle"]
        if self.witness is not None:
            lines.append("cycle: " + " -> ".join(dg.label(n) for n in self.witness.cycle))
        for player in sorted(self.per_player):
            lines.append(f"player {player}: {self.per_player[player]}")
        return "\n".join(lines)


def terminates(dg: DynamicsGraph) -> bool:
    """True iff the dynamics graph has no infinite path, i.e. is acyclic."""
    return find_cycle(dg) is None


def find_cycle(dg: DynamicsGraph) -> Optional[CycleWitness]:
    g = dg.digraph()
    for scc in strongly_connected_components(g):
        if not _is_nontrivial(g, scc):
            continue
        cycle = _cycle_within(g, scc)
        return CycleWitness(path_to_cycle=(), cycle=tuple(cycle))
    return None


def equilibria(dg: DynamicsGraph) -> frozenset:
    """Nodes with no outgoing edge."""
    sources = {u for u, _, _ in dg.edges}
    return frozenset(n for n in dg.nodes if n not in sources)


def _is_nontrivial(g: Digraph, scc: frozenset) -> bool:
    if len(scc) > 1:
        return True
    (node,) = scc
    return node in g.successors(node)


def _cycle_within(g: Digraph, scc: frozenset) -> list:
    start = min(scc, key=repr)
    restricted = _restrict(g, scc)
    # walk one edge out of start, then return to start
    first = restricted.successors(start)[0]
    if first == start:
        return [start]
    ret = shortest_path(restricted, first, {start})
    return [start] + ret[:-1]


def _restrict(g: Digraph, nodes: frozenset) -> Digraph:
    return Digraph(tuple(n for n in g.nodes if n in nodes),
                   frozenset((u, v) for u, v in g.edges if u in nodes and v in nodes))


def _players_of(dg: DynamicsGraph):
    players = set()
    for _, _, changed in dg.edges:
        players |= changed
    return players


def find_fair_cycle(dg: DynamicsGraph, players=None) -> FairnessReport:
    """Decide whether an infinite fair update path exists.

    A fair infinite path exists iff some non-trivial SCC S satisfies, for
    every player i: either some edge inside S changes i's strategy, or some
    node of S has no outgoing edge (in the whole graph) changing i's
    strategy.  The witness is a closed walk in S visiting all per-player
    witnesses.
    """
    if players is None:
        players = sorted(_players_of(dg))
    g = dg.digraph()
    can_switch = _can_switch_map(dg, players)

    report_per_player = {}
    best_scc = None
    for scc in strongly_connected_components(g):
        if not _is_nontrivial(g, scc):
            continue
        inside = [(u, v, c) for u, v, c in dg.edges if u in scc and v in scc]
        clauses = {}
        for i in players:
            if any(i in c for _, _, c in inside):
                clauses[i] = SWITCHES
            elif any(i not in can_switch[n] for n in scc):
                clauses[i] = CANNOT_SWITCH
            else:
                clauses[i] = NON_SWITCHER
        if all(v is not NON_SWITCHER for v in clauses.values()):
            witness = _fair_witness(g, scc, inside, clauses, can_switch, players)
            return FairnessReport(fair=True, witness=witness, per_player=clauses)
        if best_scc is None:
            best_scc, report_per_player = scc, clauses
    return FairnessReport(fair=False, witness=None, per_player=report_per_player)


def _can_switch_map(dg: DynamicsGraph, players):
    """For each node, the set of players with some outgoing edge changing them."""
    can = {n: set() for n in dg.nodes}
    for u, _, changed in dg.edges:
        can[u] |= changed
    return can


def _fair_witness(g, scc, inside_edges, clauses, can_switch, players):
    """Closed walk in the SCC visiting, per player, a switching edge or a
    cannot-switch node."""
    restricted = _restrict(g, scc)
    # targets: for SWITCHES players pick an inside edge; for CANNOT_SWITCH a node
    edge_targets = []
    node_targets = []
    for i in players:
        if clauses[i] == SWITCHES:
            edge_targets.append(next((u, v) for u, v, c in inside_edges if i in c))
        else:
            node_targets.append(next(n for n in scc if i not in can_switch[n]))
    start = edge_targets[0][0] if edge_targets else (node_targets[0] if node_targets else
                                                     min(scc, key=repr))
    walk = [start]
    for u, v in edge_targets:
        walk += shortest_path(restricted, walk[-1], {u})[1:]
        walk.append(v)
    for n in node_targets:
        walk += shortest_path(restricted, walk[-1], {n})[1:]
    # close the walk
    if walk[-1] != start:
        walk += shortest_path(restricted, walk[-1], {start})[1:]
        walk.pop()  # last->first edge is implicit in CycleWitness
    elif len(walk) > 1:
        walk.pop()
    else:
        # single node: needs a real cycle through it
        first = restricted.successors(start)[0]
        if first != start:
            walk += [first] + shortest_path(restricted, first, {start})[1:-1]
    return CycleWitness(path_to_cycle=(), cycle=tuple(walk))


# ---------------------------------------------------------------------------
# Labelled belief-graph analyses


def sinks(lg: BeliefGraph) -> frozenset:
    """Nodes whose every outgoing edge is a self loop."""
    return frozenset(
        n for n in lg.nodes if all(lg.successor(n, a) == n for a in lg.label_set)
    )


def reachable_two_sinks(lg: BeliefGraph):
    """Some (node, sink1, sink2) with two distinct sinks reachable, if any."""
    all_sinks = sinks(lg)
    g = lg.digraph()
    for n in lg.nodes:
        reach = g.reachable_from(n) & all_sinks
        if len(reach) >= 2:
            s1, s2 = sorted(reach, key=repr)[:2]
            return (n, s1, s2)
    return None


def find_lfair_cycle(lg: BeliefGraph) -> Optional[CycleWitness]:
    """A non-constant cycle whose edge labels cover every label, if one exists.

    Exists iff some SCC with >= 2 nodes contains, for every label, an
    internal edge carrying that label.
    """
    g = lg.digraph()
    for scc in strongly_connected_components(g):
        if len(scc) < 2:
            continue
        per_label = {}
        for n in scc:
            for a in lg.label_set:
                m = lg.successor(n, a)
                if m in scc and a not in per_label:
                    per_label[a] = (n, m)
        if len(per_label) < len(lg.label_set):
            continue
        restricted = _restrict(g, scc)
        walk = None
        for a in sorted(per_label):
            u, v = per_label[a]
            if walk is None:
                walk = [u, v] if u != v else [u]
                continue
            if walk[-1] != u:
                walk += shortest_path(restricted, walk[-1], {u})[1:]
            if u != v:
                walk.append(v)
        if walk[0] != walk[-1]:
            walk += shortest_path(restricted, walk[-1], {walk[0]})[1:]
        walk.pop()
        if len(walk) < 2:
            continue  # constant cycles are excluded
        return CycleWitness(path_to_cycle=(), cycle=tuple(walk))
    return None


def check_diamond(lg: BeliefGraph):
    """For all nodes v and labels a, b: some common node is reachable from
    delta(v, a) and from delta(v, ba).  Returns (True, None) or (False, (v, a, b))."""
    g = lg.digraph()
    reach = {n: g.reachable_from(n) for n in lg.nodes}
    for v in lg.nodes:
        for a in lg.label_set:
            via_a = lg.successor(v, a)
            for b in lg.label_set:
                via_ba = lg.successor(lg.successor(v, b), a)
                if not (reach[via_a] & reach[via_ba]):
                    return (False, (v, a, b))
    return (True, None)
