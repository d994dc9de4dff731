"""Game minors: edge/vertex deletion with preference rewriting, dominated
edges, deletion scripts, and the search for the two-player disagreement
pattern as a minor."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Union

from .errors import (
    GameDynError,
    NotDeletable,
    ScriptStepError,
    SearchBudgetExceeded,
    SourceMismatch,
    UnknownEdge,
    UnknownVertex,
)
from .game import (
    Comparison,
    FinitePlay,
    Game,
    LassoPlay,
    Play,
    PreferenceOrder,
    canonicalize,
    compare_plays,
    positional_plays,
)
from .strategy import PROFILE_GUARD, enumerate_profiles, outcome

SEARCH_BUDGET = 10 ** 5


@dataclass(frozen=True)
class DeleteEdge:
    source: str
    target: str

    def __str__(self):
        return f"edge ({self.source},{self.target})"


@dataclass(frozen=True)
class DeleteVertex:
    vertex: str

    def __str__(self):
        return f"vertex {self.vertex}"


DeletionStep = Union[DeleteEdge, DeleteVertex]


@dataclass(frozen=True)
class DeletionScript:
    steps: tuple[DeletionStep, ...]

    def to_json(self):
        out = []
        for s in self.steps:
            if isinstance(s, DeleteEdge):
                out.append({"edge": [s.source, s.target]})
            else:
                out.append({"vertex": s.vertex})
        return out

    @staticmethod
    def from_json(data) -> "DeletionScript":
        steps = []
        for i, rec in enumerate(data):
            if not isinstance(rec, dict) or len(rec) != 1:
                raise GameDynError(f"script step {i}: expected one-key record")
            if "edge" in rec:
                u, v = rec["edge"]
                steps.append(DeleteEdge(str(u), str(v)))
            elif "vertex" in rec:
                steps.append(DeleteVertex(str(rec["vertex"])))
            else:
                raise GameDynError(f"script step {i}: unknown kind {set(rec)}")
        return DeletionScript(tuple(steps))


def _restrict_preferences(game: Game, edges, vertices) -> tuple[PreferenceOrder, ...]:
    """Keep only mentioned plays that are valid in the reduced arena."""
    vset = frozenset(vertices)
    with_out = {u for u, _ in edges}
    terms = vset - with_out

    def ok(play: Play) -> bool:
        if not play.vertices() <= vset:
            return False
        if any(step not in edges for step in play.steps()):
            return False
        return not isinstance(play, FinitePlay) or play.path[-1] in terms

    out = []
    for pref in game.preferences:
        ranks = []
        for cls in pref.ranks:
            kept = frozenset(p for p in cls if ok(p))
            if kept:
                ranks.append(kept)
        out.append(PreferenceOrder(tuple(ranks)))
    return tuple(out)


def delete_edge(game: Game, edge: tuple[str, str]) -> Game:
    """Remove one edge; preferences lose every play that used it, and
    vertices made terminal drop out of the owner map."""
    edge = tuple(edge)
    if edge not in game.edges:
        raise UnknownEdge(edge)
    edges = frozenset(game.edges - {edge})
    with_out = {u for u, _ in edges}
    owner = {v: p for v, p in game.owner.items() if v in with_out}
    prefs = _restrict_preferences(game, edges, game.vertices)
    labels = {e: l for e, l in game.edge_labels.items() if e != edge}
    return Game(game.n_players, game.vertices, edges, owner, prefs, labels)


def _drop_vertex_from_play(play: Play, v: str, succ: str) -> Play:
    """Remove every occurrence of v, each of which is followed by succ."""

    def strip(seq, cyclic_next=None):
        out = []
        n = len(seq)
        for i, x in enumerate(seq):
            if x != v:
                out.append(x)
                continue
            nxt = seq[i + 1] if i + 1 < n else cyclic_next
            assert nxt == succ, f"play mentions {v} not followed by {succ}"
        return out

    if isinstance(play, FinitePlay):
        return FinitePlay(tuple(strip(play.path)))
    stem = strip(play.stem, cyclic_next=(play.loop[0] if play.loop else None))
    loop = strip(play.loop, cyclic_next=play.loop[0])
    return canonicalize(stem, loop)


def delete_vertex(game: Game, v: str) -> Game:
    """Remove a vertex: either isolated, or with a unique outgoing edge
    (v, v') such that no predecessor of v already reaches v' directly.

    In the second case every edge (u, v) is rewired to (u, v') and every
    play is rewritten by dropping its occurrences of v.
    """
    if v not in game.vertex_set:
        raise UnknownVertex(v)
    succs = game.successors(v)
    preds = game.predecessors(v)
    vertices = tuple(x for x in game.vertices if x != v)
    if not succs and not preds:
        prefs = tuple(
            PreferenceOrder(tuple(
                kept for kept in (frozenset(p for p in cls if v not in p.vertices())
                                  for cls in pref.ranks) if kept))
            for pref in game.preferences
        )
        owner = {x: p for x, p in game.owner.items() if x != v}
        return Game(game.n_players, vertices, game.edges, owner, prefs,
                    dict(game.edge_labels))
    if len(succs) != 1:
        raise NotDeletable(v, NotDeletable.MULTIPLE_SUCCESSORS)
    (v2,) = succs
    for u in preds:
        if v2 in game.successors(u):
            raise NotDeletable(v, NotDeletable.PREDECESSOR_CONFLICT)

    # Squeezing must not merge differently-ranked plays into one play of the
    # minor (e.g. dropping a cycle vertex can identify two rotations of the
    # cycle, one ranked and one implicitly worst).  A merge only matters
    # where a rewritten ranked play lands on a play whose start vertex the
    # same player still owns afterwards: those are the plays that enter the
    # player's outcome comparisons in the minor.
    non_terminal_after = {u for u, _ in game.edges} - {v}
    universe: set[Play] = set()
    for x in game.vertices:
        universe |= positional_plays(game, x)
    for pref in game.preferences:
        universe |= pref.mentioned()
    for i, pref in enumerate(game.preferences, start=1):
        mentioned = pref.mentioned()
        ranks_by_image: dict[Play, set] = {}
        rewritten: set[Play] = set()
        for p in universe:
            q = _drop_vertex_from_play(p, v, v2) if v in p.vertices() else p
            ranks_by_image.setdefault(q, set()).add(pref.rank_of(p))
            if p in mentioned and v in p.vertices():
                rewritten.add(q)
        for q in rewritten:
            if (q.start in non_terminal_after
                    and game.owner.get(q.start) == i
                    and len(ranks_by_image[q]) > 1):
                raise NotDeletable(v, NotDeletable.PREFERENCE_COLLAPSE)

    edges = set(game.edges)
    labels = dict(game.edge_labels)
    edges.discard((v, v2))
    labels.pop((v, v2), None)
    for u in preds:
        edges.discard((u, v))
        edges.add((u, v2))
        if (u, v) in labels:
            labels[(u, v2)] = labels.pop((u, v))
    owner = {x: p for x, p in game.owner.items() if x != v}

    prefs = []
    for pref in game.preferences:
        ranks = []
        seen: dict[Play, int] = {}
        for idx, cls in enumerate(pref.ranks):
            kept = set()
            for p in cls:
                q = _drop_vertex_from_play(p, v, v2) if v in p.vertices() else p
                if q in seen and seen[q] != idx:
                    raise NotDeletable(v, NotDeletable.PREDECESSOR_CONFLICT)
                seen[q] = idx
                kept.add(q)
            if kept:
                ranks.append(frozenset(kept))
        prefs.append(PreferenceOrder(tuple(ranks)))
    return Game(game.n_players, vertices, frozenset(edges), owner,
                tuple(prefs), labels)


def apply_step(game: Game, step: DeletionStep) -> Game:
    if isinstance(step, DeleteEdge):
        return delete_edge(game, (step.source, step.target))
    return delete_vertex(game, step.vertex)


def apply_script(game: Game, script: DeletionScript) -> Game:
    for i, step in enumerate(script.steps):
        try:
            game = apply_step(game, step)
        except GameDynError as exc:
            raise ScriptStepError(i, str(step), exc) from exc
    return game


# ---------------------------------------------------------------------------
# Dominated edges


def is_dominated(game: Game, e1: tuple[str, str], e2: tuple[str, str], *,
                 guard: int = PROFILE_GUARD, force: bool = False) -> bool:
    """True iff for every positional profile, the outcome from the shared
    source is strictly better through e2 than through e1 (for the source's
    owner)."""
    e1, e2 = tuple(e1), tuple(e2)
    for e in (e1, e2):
        if e not in game.edges:
            raise UnknownEdge(e)
    if e1[0] != e2[0]:
        raise SourceMismatch(e1, e2)
    if e1 == e2:
        return False
    v = e1[0]
    player = game.owner[v]
    pref = game.preference(player)
    rep = game.successors(v)[0]
    for sigma in enumerate_profiles(game, guard=guard, force=force):
        if sigma[v] != rep:
            continue  # one representative per choice of the other vertices
        out1 = outcome(game, sigma.updated(v, e1[1]), v)
        out2 = outcome(game, sigma.updated(v, e2[1]), v)
        if pref.compare(out1, out2) is not Comparison.LESS:
            return False
    return True


def script_is_dominant(game: Game, script: DeletionScript, *,
                       guard: int = PROFILE_GUARD) -> bool:
    """True iff every edge deletion of the script removes an edge dominated
    by some sibling edge of the game reached at that step."""
    for step in script.steps:
        if isinstance(step, DeleteEdge):
            e = (step.source, step.target)
            siblings = [(step.source, w) for w in game.successors(step.source)
                        if w != step.target]
            if not any(is_dominated(game, e, f, guard=guard) for f in siblings):
                return False
        game = apply_step(game, step)
    return True


# ---------------------------------------------------------------------------
# The two-player disagreement pattern and its minor search


def is_dis_pattern(game: Game) -> bool:
    """Up to renaming: one terminal t, two vertices a, b of distinct
    players, edges {a->t, a->b, b->t, b->a}, and each owner strictly
    prefers the indirect route over the direct one."""
    if len(game.vertices) != 3:
        return False
    terms = game.terminals
    if len(terms) != 1:
        return False
    (t,) = terms
    a, b = sorted(game.vertex_set - {t})
    if game.edges != frozenset({(a, t), (a, b), (b, t), (b, a)}):
        return False
    i, j = game.owner.get(a), game.owner.get(b)
    if i is None or j is None or i == j:
        return False
    return (
        compare_plays(game, i, FinitePlay((a, t)), FinitePlay((a, b, t)))
        is Comparison.LESS
        and compare_plays(game, j, FinitePlay((b, t)), FinitePlay((b, a, t)))
        is Comparison.LESS
    )


def _deletable_vertices(game: Game):
    for v in game.non_terminals():
        succs = game.successors(v)
        if len(succs) != 1:
            continue
        (v2,) = succs
        if any(v2 in game.successors(u) for u in game.predecessors(v)):
            continue
        yield v


def _notg_dis_script(game: Game):
    """Constructive search when the game is a valid next-hop-only routing
    game: find a strong dispute wheel, extract its ring minor, then squeeze
    the ring down to two pivots.

    Returns ("found", script), ("absent", None) for a definitive negative,
    or ("inapplicable", None) when the fast path does not apply.
    """
    from . import spp  # deferred: spp depends on this module

    try:
        otg = spp.otg_from_game(game)
    except GameDynError:
        return ("inapplicable", None)
    if spp.validate_otg(otg.game, otg.permitted) or not spp.is_notg(otg):
        return ("inapplicable", None)
    sdw = spp.find_sdw(otg)
    if sdw is None:
        return ("absent", None)  # the wheel search is exhaustive
    _, ring_script = spp.extract_sdw_minor(otg, sdw)
    ring = apply_script(game, ring_script)
    steps = list(ring_script.steps)
    k = len(sdw.pivots)
    pivots = list(sdw.pivots)
    (target,) = ring.terminals
    for i in range(2, k):
        steps.append(DeleteEdge(pivots[i], target))
        ring = delete_edge(ring, (pivots[i], target))
        steps.append(DeleteVertex(pivots[i]))
        ring = delete_vertex(ring, pivots[i])
    if is_dis_pattern(ring):
        return ("found", DeletionScript(tuple(steps)))
    return ("inapplicable", None)  # fall back to the generic search


def find_dis_minor(game: Game, *, budget: int = SEARCH_BUDGET) -> Optional[DeletionScript]:
    """A deletion script turning the game into the disagreement pattern, or
    None when an exhaustive search proves there is none.

    Raises SearchBudgetExceeded when the generic backtracking search runs
    out of budget before either outcome.
    """
    if is_dis_pattern(game):
        return DeletionScript(())
    status, fast = _notg_dis_script(game)
    if status == "found":
        return fast
    if status == "absent":
        return None

    visited = {game.key()}
    spent = [0]

    def dfs(g: Game, steps: list) -> Optional[DeletionScript]:
        spent[0] += 1
        if spent[0] > budget:
            raise SearchBudgetExceeded(budget)
        if is_dis_pattern(g):
            return DeletionScript(tuple(steps))
        if len(g.vertices) < 3:
            return None
        moves: list[DeletionStep] = [DeleteEdge(u, v) for u, v in sorted(g.edges)]
        moves += [DeleteVertex(v) for v in _deletable_vertices(g)]
        for step in moves:
            try:
                g2 = apply_step(g, step)
            except GameDynError:
                continue
            k = g2.key()
            if k in visited:
                continue
            visited.add(k)
            steps.append(step)
            found = dfs(g2, steps)
            if found is not None:
                return found
            steps.pop()
        return None

    return dfs(game, [])
