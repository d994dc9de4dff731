"""Graphviz DOT export for arenas, dynamics graphs and belief graphs."""

from __future__ import annotations

from .dynamics import BeliefGraph, DynamicsGraph
from .game import Game


def _quote(s: str) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(obj) -> str:
    if isinstance(obj, Game):
        return _game_dot(obj)
    if isinstance(obj, DynamicsGraph):
        return _dynamics_dot(obj)
    if isinstance(obj, BeliefGraph):
        return _belief_dot(obj)
    raise TypeError(f"cannot export {type(obj).__name__} as DOT")


def _game_dot(game: Game) -> str:
    lines = ["digraph arena {"]
    terms = game.terminals
    for v in sorted(game.vertices):
        if v in terms:
            lines.append(f"  {_quote(v)} [shape=doublecircle];")
        else:
            lines.append(f"  {_quote(v)} [label={_quote(f'{v} (p{game.owner[v]})')}];")
    for u, v in sorted(game.edges):
        label = game.edge_labels.get((u, v))
        attr = f" [label={_quote(label)}]" if label else ""
        lines.append(f"  {_quote(u)} -> {_quote(v)}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dynamics_dot(dg: DynamicsGraph) -> str:
    lines = [f"digraph dynamics_{dg.kind} {{"]
    order = sorted(dg.nodes, key=dg.label)
    for n in order:
        lines.append(f"  {_quote(dg.label(n))};")
    for u, v, changed in sorted(dg.edges, key=lambda e: (dg.label(e[0]), dg.label(e[1]))):
        who = ",".join(str(i) for i in sorted(changed))
        lines.append(f"  {_quote(dg.label(u))} -> {_quote(dg.label(v))} [label={_quote(who)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _belief_dot(bg: BeliefGraph) -> str:
    lines = ["digraph beliefs {"]
    order = sorted(bg.nodes, key=lambda n: bg.labels_of[n])
    for n in order:
        shape = " [shape=box]" if n in bg.v0_nodes else ""
        lines.append(f"  {_quote(bg.labels_of[n])}{shape};")
    for n in order:
        for a in bg.label_set:
            m = bg.successor(n, a)
            lines.append(
                f"  {_quote(bg.labels_of[n])} -> {_quote(bg.labels_of[m])} [label={a}];"
            )
    lines.append("}")
    return "\n".join(lines) + "\n"
