"""A minimal immutable directed-graph value used across analyses."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Digraph:
    nodes: tuple
    edges: frozenset  # of (u, v) pairs
    _succ: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        succ = {u: [] for u in self.nodes}
        for u, v in sorted(self.edges, key=repr):
            succ[u].append(v)
        object.__setattr__(self, "_succ", succ)

    def successors(self, u):
        return tuple(self._succ[u])

    def reachable_from(self, u) -> frozenset:
        """All nodes reachable from u, including u itself."""
        seen = {u}
        todo = [u]
        while todo:
            for w in self._succ[todo.pop()]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return frozenset(seen)


def strongly_connected_components(g: Digraph) -> list[frozenset]:
    """Tarjan's algorithm, iterative; components in reverse topological order."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    sccs = []
    counter = [0]

    def strongconnect(root):
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter[0]
                counter[0] += 1
                stack.append(v)
                on_stack.add(v)
            recurse = False
            succ = g.successors(v)
            for i in range(pi, len(succ)):
                w = succ[i]
                if w not in index:
                    work[-1] = (v, i + 1)
                    work.append((w, 0))
                    recurse = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                sccs.append(frozenset(comp))
            work.pop()
            if work:
                u, _ = work[-1]
                low[u] = min(low[u], low[v])

    for v in g.nodes:
        if v not in index:
            strongconnect(v)
    return sccs


def shortest_path(g: Digraph, source, targets) -> list | None:
    """BFS path from source to any node in targets, restricted to g."""
    targets = set(targets)
    if source in targets:
        return [source]
    prev = {source: None}
    todo = [source]
    while todo:
        next_todo = []
        for u in todo:
            for w in g.successors(u):
                if w in prev:
                    continue
                prev[w] = u
                if w in targets:
                    path = [w]
                    while prev[path[-1]] is not None:
                        path.append(prev[path[-1]])
                    return list(reversed(path))
                next_todo.append(w)
        todo = next_todo
    return None


def transitive_closure(g: Digraph) -> Digraph:
    """Edge (a, b) iff a non-empty path a -> ... -> b exists in g."""
    closure = set()
    for u in g.nodes:
        seen = set()
        todo = list(g.successors(u))
        while todo:
            w = todo.pop()
            if w in seen:
                continue
            seen.add(w)
            todo.extend(g.successors(w))
        closure.update((u, w) for w in seen)
    return Digraph(g.nodes, frozenset(closure))
