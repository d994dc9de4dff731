"""Seeded random instance generators for the property suites.

Everything is driven by random.Random(seed) so failures reproduce from the
seed alone.  Sizes are kept tiny on purpose: the suites run a thousand
instances each and every statement we exercise is size-independent.
"""

import random

from gamedyn import (
    DeleteEdge,
    DeleteVertex,
    DeletionScript,
    FinitePlay,
    Game,
    PreferenceOrder,
    OneTargetGame,
    delete_edge,
    delete_vertex,
    is_dominated,
    positional_plays,
    validate_game,
)
from gamedyn.errors import NotDeletable


def random_game(seed, max_vertices=5, max_players=3, acyclic=False):
    rng = random.Random(seed)
    n = rng.randint(3, max_vertices)
    names = [f"v{i}" for i in range(n)]
    edges = set()
    for i, u in enumerate(names):
        pool = names[i + 1:] if acyclic else [w for w in names if w != u]
        if not pool:
            continue
        deg = rng.randint(1 if i == 0 else 0, min(2, len(pool)))
        edges |= {(u, w) for w in rng.sample(pool, deg)}
    vertices = tuple(names)
    terminals = {v for v in names if not any(u == v for u, _ in edges)}
    n_players = rng.randint(1, max_players)
    owner = {v: rng.randint(1, n_players) for v in names if v not in terminals}

    skeleton = Game(n_players, vertices, frozenset(edges), owner,
                    tuple(() for _ in range(n_players)), {})
    prefs = []
    for player in range(1, n_players + 1):
        plays = []
        for v in sorted(owner):
            if owner[v] == player:
                plays.extend(positional_plays(skeleton, v))
        plays.sort(key=str)  # library iteration order is not seed-stable
        rng.shuffle(plays)
        plays = plays[: rng.randint(0, len(plays))]
        classes, current = [], []
        for p in plays:
            current.append(p)
            if rng.random() < 0.6:
                classes.append(tuple(current))
                current = []
        if current:
            classes.append(tuple(current))
        prefs.append(PreferenceOrder(tuple(classes)))
    game = Game(n_players, vertices, frozenset(edges), owner, tuple(prefs), {})
    validate_game(game)
    return game


def _deletable_vertices(game):
    out = []
    for v in sorted(game.vertex_set):
        try:
            delete_vertex(game, v)
        except NotDeletable:
            continue
        out.append(v)
    return out


def random_script(seed, game, max_steps=2, dominant=False):
    """A valid deletion script for the game (possibly empty).

    Edge deletions are restricted to vertices of out-degree >= 2 so that no
    new terminal vertex appears: every play of the minor is then a play of
    the original game, which is what the rewriting of preferences under
    deletion presupposes.  With dominant=True every edge deletion removes a
    dominated edge, so the result is a dominant minor.
    """
    rng = random.Random(seed)
    steps = []
    g = game
    for _ in range(rng.randint(0, max_steps)):
        edge_moves = []
        for u, v in sorted(g.edges):
            siblings = [w for w in g.successors(u) if w != v]
            if not siblings:
                continue
            if dominant and not any(is_dominated(g, (u, v), (u, w))
                                    for w in siblings):
                continue
            edge_moves.append(DeleteEdge(u, v))
        vertex_moves = [DeleteVertex(v) for v in _deletable_vertices(g)]
        moves = edge_moves + vertex_moves
        if not moves:
            break
        step = rng.choice(moves)
        if isinstance(step, DeleteEdge):
            g = delete_edge(g, (step.source, step.target))
        else:
            g = delete_vertex(g, step.vertex)
        steps.append(step)
        if not g.edges:
            break
    return DeletionScript(tuple(steps))


def random_notg(seed, max_nodes=5):
    """A random next-hop routing game: one origin, one vertex per player,
    next-hop preferences, suffix-closed permitted route sets."""
    rng = random.Random(seed)
    k = rng.randint(2, max_nodes - 1)  # player vertices; +1 for the origin
    origin = "t"
    names = [f"u{i}" for i in range(1, k + 1)]
    edges = {(u, origin) for u in names}  # always routable directly
    for u in names:
        for w in names:
            if w != u and rng.random() < 0.45:
                edges.add((u, w))
    owner = {v: i + 1 for i, v in enumerate(names)}

    # usable sub-arena: each edge kept with high probability; the direct edge
    # to the origin guarantees non-empty permitted sets when we force-keep it
    # for stranded vertices
    usable = {e for e in sorted(edges) if rng.random() < 0.8}

    def routes(v):
        out = []

        def walk(path):
            u = path[-1]
            if u == origin:
                out.append(tuple(path))
                return
            for _, w in sorted(e for e in usable if e[0] == u):
                if w not in path:
                    walk(path + [w])

        walk([v])
        return out

    for u in names:
        if not routes(u):
            usable.add((u, origin))

    permitted = {}
    prefs = []
    for i, v in enumerate(names):
        rs = routes(v)
        permitted[i + 1] = rs
        hops = sorted({r[1] for r in rs})
        rng.shuffle(hops)
        prefs.append(PreferenceOrder(tuple(
            tuple(FinitePlay(r) for r in rs if r[1] == hop) for hop in hops
        )))
    game = Game(k, tuple(names + [origin]), frozenset(edges), owner,
                tuple(prefs), {})
    return OneTargetGame(game, {
        i: frozenset(FinitePlay(r) for r in rs) for i, rs in permitted.items()
    })
