"""One-target routing games, dispute wheels, and the BGP-style safety verdict.

A one-target game (OTG) models interdomain routing: every player owns one
state, routes toward a unique terminal, and ranks its permitted paths.  The
stable-paths-style input format lists, per node, its ranked permitted paths
to the origin.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass
from typing import Mapping, Optional

import networkx as nx

from .dynamics import build_dynamics
from .errors import (
    GameDynError,
    GameFormatError,
    InvalidSDW,
    SuffixClosureRepairNeeded,
)
from .game import (
    Comparison,
    FinitePlay,
    Game,
    LassoPlay,
    PreferenceOrder,
    positional_plays,
)
from .minors import DeleteEdge, DeletionScript, DeleteVertex, apply_step, delete_edge
from .strategy import PROFILE_GUARD, StrategyProfile


@dataclass(frozen=True)
class OneTargetGame:
    game: Game
    permitted: Mapping[int, frozenset]  # player -> set of FinitePlay

    def player_vertex(self, player: int) -> str:
        (v,) = self.game.owned_by(player)
        return v

    @property
    def target(self) -> str:
        (t,) = self.game.terminals
        return t

    def permitted_at(self, vertex: str) -> frozenset:
        return self.permitted[self.game.owner[vertex]]


@dataclass(frozen=True)
class DisputeWheel:
    """Pivots u_1..u_k, their direct paths, and the connecting prefixes.

    links[i] is the vertex sequence from pivots[i] up to (but excluding)
    pivots[i+1]; appending direct[i+1].path gives the preferred indirect
    permitted path of pivots[i].
    """

    pivots: tuple[str, ...]
    direct: tuple[FinitePlay, ...]
    links: tuple[tuple[str, ...], ...]

    @property
    def k(self) -> int:
        return len(self.pivots)

    def indirect(self, i: int) -> FinitePlay:
        return FinitePlay(self.links[i] + self.direct[(i + 1) % self.k].path)

    def link_states(self, i: int) -> tuple[str, ...]:
        """The link path including its endpoint pivot."""
        return self.links[i] + (self.pivots[(i + 1) % self.k],)

    def describe(self) -> str:
        parts = [f"pivots: ({', '.join(self.pivots)})"]
        for i, u in enumerate(self.pivots):
            parts.append(f"  {u}: direct {self.direct[i]} < indirect {self.indirect(i)}")
        return "\n".join(parts)


class SafetyStatus(enum.Enum):
    SAFE_NO_DW = "SafeNoDW"
    SAFE_MODEL_CHECKED = "SafeModelChecked"
    UNSAFE_SDW = "UnsafeSDW"
    UNSAFE_MULTI_EQUILIBRIA = "UnsafeMultiEquilibria"
    UNSAFE_MODEL_CHECKED = "UnsafeModelChecked"
    UNKNOWN_STRUCTURAL = "UnknownStructural"

    @property
    def safe(self) -> Optional[bool]:
        if self in (SafetyStatus.SAFE_NO_DW, SafetyStatus.SAFE_MODEL_CHECKED):
            return True
        if self is SafetyStatus.UNKNOWN_STRUCTURAL:
            return None
        return False


@dataclass(frozen=True)
class SafetyVerdict:
    status: SafetyStatus
    evidence: object
    method: str


# ---------------------------------------------------------------------------
# Validation


def validate_otg(game: Game, permitted: Mapping[int, frozenset]) -> list[str]:
    """Check the one-target axioms; returns diagnostics (empty iff valid)."""
    diags = []
    terms = game.terminals
    if len(terms) != 1:
        diags.append(f"SingleTarget: expected one terminal, found {sorted(terms)}")
        return diags
    (target,) = terms
    for i in range(1, game.n_players + 1):
        owned = game.owned_by(i)
        if len(owned) != 1:
            diags.append(f"OneStatePerPlayer: player {i} owns {list(owned)}")
    if diags:
        return diags

    for i in range(1, game.n_players + 1):
        (v,) = game.owned_by(i)
        perm = permitted.get(i, frozenset())
        pref = game.preference(i)
        for p in perm:
            if not isinstance(p, FinitePlay) or p.start != v or p.path[-1] != target:
                diags.append(f"PermittedShape: player {i}: {p} is not a {v}->{target} path")
        # forbidden = the positional plays from v that are not permitted
        forbidden = [p for p in positional_plays(game, v) if p not in perm]
        for p in perm:
            for q in forbidden:
                if pref.compare(q, p) is not Comparison.LESS:
                    diags.append(
                        f"ForbiddenBelowPermitted: player {i}: {q} not strictly below {p}"
                    )
        for q1, q2 in itertools.combinations(sorted(forbidden, key=str), 2):
            if pref.compare(q1, q2) is not Comparison.EQUAL:
                diags.append(f"ForbiddenPlateau: player {i}: {q1} vs {q2}")
        for p1, p2 in itertools.combinations(sorted(perm, key=str), 2):
            if (pref.compare(p1, p2) is Comparison.EQUAL
                    and p1.path[1] != p2.path[1]):
                diags.append(f"SameNextHopTies: player {i}: {p1} ~ {p2}")
        # suffix closure
        for p in perm:
            for m in range(1, len(p.path) - 1):
                w = p.path[m]
                suffix = FinitePlay(p.path[m:])
                j = game.owner.get(w)
                if j is None:
                    diags.append(f"SuffixClosure: player {i}: suffix of {p} at unowned {w}")
                elif suffix not in permitted.get(j, frozenset()):
                    diags.append(
                        f"SuffixClosure: {suffix} (suffix of {p}) not permitted at {w}"
                    )
    return diags


def is_notg(otg: OneTargetGame) -> bool:
    """Next-hop-only preferences: permitted paths sharing a next hop tie."""
    for i in range(1, otg.game.n_players + 1):
        pref = otg.game.preference(i)
        for p1, p2 in itertools.combinations(sorted(otg.permitted[i], key=str), 2):
            if p1.path[1] == p2.path[1] and pref.compare(p1, p2) is not Comparison.EQUAL:
                return False
    return True


def otg_from_game(game: Game) -> OneTargetGame:
    """Infer permitted sets from preferences: the finite mentioned plays
    ranked strictly above every mentioned lasso."""
    terms = game.terminals
    if len(terms) != 1:
        raise GameFormatError(f"expected one terminal, found {sorted(terms)}")
    (target,) = terms
    permitted = {}
    for i in range(1, game.n_players + 1):
        owned = game.owned_by(i)
        if len(owned) != 1:
            raise GameFormatError(f"player {i} owns {list(owned)}, expected one state")
        (v,) = owned
        pref = game.preference(i)
        lasso_ranks = [pref.rank_of(p) for p in pref.mentioned()
                       if isinstance(p, LassoPlay)]
        forbidden_rank = min(lasso_ranks, default=len(pref.ranks))
        permitted[i] = frozenset(
            p for p in pref.mentioned()
            if isinstance(p, FinitePlay) and p.start == v and p.path[-1] == target
            and pref.rank_of(p) < forbidden_rank
        )
    return OneTargetGame(game, permitted)


# ---------------------------------------------------------------------------
# Dispute wheels


def _dispute_digraph(otg: OneTargetGame):
    """Nodes (pivot, direct path); an edge to (u2, pi2) carries each prefix
    h with h + pi2 permitted at the pivot and strictly preferred to its
    direct path."""
    game = otg.game
    nodes = [(otg.player_vertex(i), p)
             for i in range(1, game.n_players + 1)
             for p in sorted(otg.permitted[i], key=str)]
    decomps: dict = {}
    pivot_vertices = {u for u, _ in nodes}
    for (u, pi) in nodes:
        pref = game.preference(game.owner[u])
        for rho in sorted(otg.permitted_at(u), key=str):
            if pref.compare(pi, rho) is not Comparison.LESS:
                continue
            for m in range(1, len(rho.path) - 1):
                u2 = rho.path[m]
                if u2 not in pivot_vertices:
                    continue
                pi2 = FinitePlay(rho.path[m:])
                if pi2 not in otg.permitted_at(u2):
                    continue
                decomps.setdefault(((u, pi), (u2, pi2)), []).append(rho.path[:m])
    return nodes, decomps


def _wheel_from_cycle(cycle, decomps, choice=None):
    k = len(cycle)
    pivots, direct, links = [], [], []
    for i in range(k):
        a, b = cycle[i], cycle[(i + 1) % k]
        hs = sorted(decomps[(a, b)])
        h = hs[choice[i]] if choice is not None else hs[0]
        pivots.append(a[0])
        direct.append(a[1])
        links.append(tuple(h))
    return DisputeWheel(tuple(pivots), tuple(direct), tuple(links))


def _cycles(nodes, decomps):
    g = nx.DiGraph()
    g.add_nodes_from(nodes)
    g.add_edges_from(decomps.keys())

    # rotate each cycle to a canonical starting node and sort the lot, so
    # results do not depend on hash-randomized set iteration inside networkx
    def canon(cycle):
        i = min(range(len(cycle)), key=lambda j: repr(cycle[j]))
        return cycle[i:] + cycle[:i]

    return sorted((canon(c) for c in nx.simple_cycles(g)), key=repr)


def find_dispute_wheel(otg: OneTargetGame) -> Optional[DisputeWheel]:
    """Some dispute wheel, if any exists (exhaustive search)."""
    nodes, decomps = _dispute_digraph(otg)
    for cycle in _cycles(nodes, decomps):
        return _wheel_from_cycle(cycle, decomps)
    return None


def sdw_violations(otg: OneTargetGame, dw: DisputeWheel) -> list[str]:
    """Diagnostics for the wheel conditions plus the two strength
    conditions (pivot locality; state-disjointness/shared-suffix)."""
    game = otg.game
    diags = []
    k = dw.k
    for i in range(k):
        u = dw.pivots[i]
        pref = game.preference(game.owner[u])
        if dw.direct[i] not in otg.permitted_at(u):
            diags.append(f"direct path of {u} not permitted")
        if dw.links[i] and dw.links[i][0] != u:
            diags.append(f"link {i} does not start at {u}")
        ind = dw.indirect(i)
        if not dw.links[i]:
            diags.append(f"link {i} is empty")
            continue
        if ind not in otg.permitted_at(u):
            diags.append(f"indirect path {ind} of {u} not permitted")
        elif pref.compare(dw.direct[i], ind) is not Comparison.LESS:
            diags.append(f"{u} does not strictly prefer {ind} over {dw.direct[i]}")
    if diags:
        return diags

    pivots = set(dw.pivots)
    link_states = [set(dw.link_states(i)) for i in range(k)]
    direct_states = [set(dw.direct[i].path) for i in range(k)]
    for i, u in enumerate(dw.pivots):
        for j in range(k):
            if j != i and u in direct_states[j]:
                diags.append(f"pivot {u} occurs in the direct path of {dw.pivots[j]}")
            if j not in (i, (i - 1) % k) and u in link_states[j]:
                diags.append(f"pivot {u} occurs in link {j}")
    for i in range(k):
        for j in range(k):
            shared = (direct_states[i] & link_states[j]) - pivots
            if shared:
                diags.append(
                    f"direct path of {dw.pivots[i]} and link {j} share {sorted(shared)}"
                )
    for i, j in itertools.combinations(range(k), 2):
        shared = (link_states[i] & link_states[j]) - pivots
        if shared:
            diags.append(f"links {i} and {j} share {sorted(shared)}")
        for v in (direct_states[i] & direct_states[j]) - pivots:
            pi, pj = dw.direct[i].path, dw.direct[j].path
            if pi[pi.index(v):] != pj[pj.index(v):]:
                diags.append(
                    f"direct paths of {dw.pivots[i]} and {dw.pivots[j]} "
                    f"share {v} with different suffixes"
                )
    return diags


def _iter_sdws(otg: OneTargetGame):
    nodes, decomps = _dispute_digraph(otg)
    for cycle in _cycles(nodes, decomps):
        edges = [(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]
        options = [range(len(decomps[e])) for e in edges]
        for choice in itertools.product(*options):
            dw = _wheel_from_cycle(cycle, decomps, choice)
            if not sdw_violations(otg, dw):
                yield dw


def find_sdw(otg: OneTargetGame) -> Optional[DisputeWheel]:
    """Some strong dispute wheel, or None after exhausting all wheel
    candidates (cycles of the dispute digraph with every link choice)."""
    return next(_iter_sdws(otg), None)


# ---------------------------------------------------------------------------
# Minor extraction from a strong wheel


def extract_sdw_minor(otg: OneTargetGame, sdw: DisputeWheel):
    """Reduce the game to the wheel's pivots plus the target.

    Deletes every edge not used by the wheel's paths, then squeezes away all
    non-pivot vertices; finally replays the two-profile oscillation (all
    pivots routing around the ring vs. all routing direct) as a sanity
    certificate.  Returns (minor, script).
    """
    problems = sdw_violations(otg, sdw)
    if problems:
        raise InvalidSDW("; ".join(problems))
    game = otg.game
    keep = set()
    for i in range(sdw.k):
        keep.update(sdw.direct[i].steps())
        seq = sdw.links[i] + (sdw.pivots[(i + 1) % sdw.k],)
        keep.update(zip(seq, seq[1:]))

    steps: list = []
    g = game
    for e in sorted(game.edges - keep):
        g = delete_edge(g, e)
        steps.append(DeleteEdge(*e))

    pivots = set(sdw.pivots)
    target = otg.target
    pending = [v for v in g.vertices if v not in pivots and v != target]
    while pending:
        progress = False
        for v in list(pending):
            try:
                g = apply_step(g, DeleteVertex(v))
            except GameDynError:
                continue
            steps.append(DeleteVertex(v))
            pending.remove(v)
            progress = True
        if not progress:
            raise InvalidSDW(f"cannot squeeze away {sorted(pending)}")

    ring = {sdw.pivots[i]: sdw.pivots[(i + 1) % sdw.k] for i in range(sdw.k)}
    sigma1 = StrategyProfile.from_dict(ring)
    sigma2 = StrategyProfile.from_dict({u: target for u in sdw.pivots})
    dg = build_dynamics(g, "pc")
    arcs = {(a, b) for a, b, _ in dg.edges}
    if (sigma1, sigma2) not in arcs or (sigma2, sigma1) not in arcs:
        raise InvalidSDW("extracted minor lacks the two-profile oscillation")
    return g, DeletionScript(tuple(steps))


# ---------------------------------------------------------------------------
# Safety verdict


def _sdw_bpc_oscillation(otg: OneTargetGame, sdw: DisputeWheel):
    """Two full profiles oscillating under fair best-reply updates, if the
    wheel survives best replies.

    Pivots alternate between their direct path and the link toward the next
    pivot; every other wheel state routes along its wheel path, remaining
    states take their best permitted next hop.  Checks that every pivot's
    switch is a strictly-improving best reply in both directions and that no
    idle player could switch in both profiles (so the two-profile cycle is
    fair).  Returns (profile_ring, profile_direct) or None.
    """
    from .dynamics import _improving_deviations

    game = otg.game
    hop: dict[str, str] = {}
    pivots = set(sdw.pivots)
    for i in range(sdw.k):
        for seq in (sdw.direct[i].path, sdw.link_states(i)):
            for a, b in zip(seq, seq[1:]):
                if a in pivots:
                    continue
                if hop.setdefault(a, b) != b:
                    return None  # conflicting wheel routing
    base = {}
    for v in game.non_terminals():
        if v in pivots:
            continue
        if v in hop:
            base[v] = hop[v]
            continue
        pref = game.preference(game.owner[v])
        perm = sorted(otg.permitted_at(v), key=lambda p: (pref.rank_of(p), str(p)))
        base[v] = perm[0].path[1] if perm else game.successors(v)[0]
    ring, direct = {}, {}
    for i, u in enumerate(sdw.pivots):
        link = sdw.links[i]
        ring[u] = link[1] if len(link) > 1 else sdw.pivots[(i + 1) % sdw.k]
        direct[u] = sdw.direct[i].path[1]
    if ring == direct:
        return None
    s1 = StrategyProfile.from_dict({**base, **ring})
    s2 = StrategyProfile.from_dict({**base, **direct})
    dev1 = _improving_deviations(game, s1, best_reply=True)
    dev2 = _improving_deviations(game, s2, best_reply=True)
    switching = set()
    for u in sdw.pivots:
        if ring[u] == direct[u]:
            continue
        i = game.owner[u]
        switching.add(i)
        if not any(v == u and w == direct[u] for v, w, _ in dev1[i]):
            return None
        if not any(v == u and w == ring[u] for v, w, _ in dev2[i]):
            return None
    for j in range(1, game.n_players + 1):
        if j not in switching and dev1[j] and dev2[j]:
            return None  # j could always switch but never does: not fair
    return (s1, s2)


def _structural_verdict(otg: OneTargetGame, guard: int, force: bool) -> SafetyVerdict:
    dw = find_dispute_wheel(otg)
    if dw is None:
        return SafetyVerdict(SafetyStatus.SAFE_NO_DW, None,
                             "no dispute wheel: fair best-reply updates converge")
    if is_notg(otg):
        for sdw in _iter_sdws(otg):
            osc = _sdw_bpc_oscillation(otg, sdw)
            if osc is not None:
                return SafetyVerdict(
                    SafetyStatus.UNSAFE_SDW, (sdw, osc),
                    "strong dispute wheel whose oscillation survives best replies")
    from .analysis import equilibria

    dg = build_dynamics(otg.game, "bpc", guard=guard, force=force)
    eq = equilibria(dg)
    if len(eq) >= 2:
        return SafetyVerdict(SafetyStatus.UNSAFE_MULTI_EQUILIBRIA, eq,
                             "several stable states, so updates cannot always "
                             "converge to one of them")
    return SafetyVerdict(SafetyStatus.UNKNOWN_STRUCTURAL, dw,
                         "a dispute wheel exists but is not a strong wheel "
                         "of a next-hop game; structural tests inconclusive")


def _exact_verdict(otg: OneTargetGame, guard: int, force: bool) -> SafetyVerdict:
    from .analysis import find_fair_cycle

    dg = build_dynamics(otg.game, "bpc", guard=guard, force=force)
    report = find_fair_cycle(dg, players=range(1, otg.game.n_players + 1))
    if report.fair:
        return SafetyVerdict(SafetyStatus.UNSAFE_MODEL_CHECKED, report,
                             "fair oscillation found by model checking")
    return SafetyVerdict(SafetyStatus.SAFE_MODEL_CHECKED, report,
                         "no fair oscillation: model checking exhausted")


def safety_verdict(otg: OneTargetGame, mode: str = "structural", *,
                   guard: int = PROFILE_GUARD, force: bool = False) -> SafetyVerdict:
    if mode == "structural":
        return _structural_verdict(otg, guard, force)
    if mode == "exact":
        return _exact_verdict(otg, guard, force)
    if mode != "both":
        raise GameDynError(f"unknown safety mode {mode!r}")
    structural = _structural_verdict(otg, guard, force)
    exact = _exact_verdict(otg, guard, force)
    if structural.status.safe is not None and structural.status.safe != exact.status.safe:
        raise GameDynError(
            f"inconsistent verdicts: {structural.status.value} vs {exact.status.value}"
        )
    if structural.status.safe is not None:
        return SafetyVerdict(structural.status, structural.evidence,
                             structural.method + "; confirmed by model checking")
    return exact


# ---------------------------------------------------------------------------
# Stable-paths input format


def parse_spp(text: str, *, complete_suffixes: bool = False) -> OneTargetGame:
    """Read {"origin", "nodes": {id: {"paths": [...]}}, "extra_edges"}.

    Each node lists its permitted paths to the origin, best first; the arena
    is the union of the path edges plus the declared extra edges.  Rankings
    must be suffix-closed; with complete_suffixes, missing suffixes are
    appended at the lowest permitted rank instead of rejecting the input.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GameFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise GameFormatError("top level must be an object")
    unknown = set(data) - {"origin", "nodes", "extra_edges"}
    if unknown:
        raise GameFormatError(f"unknown fields: {sorted(unknown)}")
    origin = data.get("origin")
    nodes = data.get("nodes")
    if not isinstance(origin, str) or not isinstance(nodes, dict) or not nodes:
        raise GameFormatError("need an origin id and a non-empty nodes table")
    if origin in nodes:
        raise GameFormatError("the origin cannot rank paths")

    ranked: dict[str, list[tuple[str, ...]]] = {}
    for node, rec in sorted(nodes.items()):
        if not isinstance(rec, dict) or set(rec) != {"paths"}:
            raise GameFormatError(f"node {node}: expected a paths list", locus=node)
        paths = []
        for p in rec["paths"]:
            p = tuple(str(x) for x in p)
            if len(p) < 2 or p[0] != node or p[-1] != origin:
                raise GameFormatError(
                    f"node {node}: path {list(p)} must run from {node} to {origin}",
                    locus=node)
            if p in paths:
                raise GameFormatError(f"node {node}: duplicate path {list(p)}",
                                      locus=node)
            paths.append(p)
        ranked[node] = paths

    # suffix closure
    missing = []
    for node, paths in sorted(ranked.items()):
        for p in paths:
            for m in range(1, len(p) - 1):
                w = p[m]
                if w not in ranked:
                    raise GameFormatError(
                        f"path {list(p)} passes through unknown node {w}")
                suffix = p[m:]
                if suffix not in ranked[w] and suffix not in missing:
                    missing.append(suffix)
    while missing:
        if not complete_suffixes:
            raise SuffixClosureRepairNeeded([list(s) for s in missing])
        for s in missing:
            ranked[s[0]].append(s)
        missing = [
            p[m:]
            for node, paths in sorted(ranked.items()) for p in paths
            for m in range(1, len(p) - 1)
            if p[m:] not in ranked[p[m]]
        ]

    players = sorted(ranked)
    vertices = sorted({origin} | {v for ps in ranked.values() for p in ps for v in p})
    edges = {step for ps in ranked.values() for p in ps for step in zip(p, p[1:])}
    for rec in data.get("extra_edges", []):
        u, v = (str(x) for x in rec)
        if u not in vertices or v not in vertices:
            raise GameFormatError(f"extra edge ({u},{v}) uses unknown vertices")
        edges.add((u, v))
    owner = {node: i + 1 for i, node in enumerate(players)}
    prefs = []
    permitted = {}
    for i, node in enumerate(players):
        prefs.append(PreferenceOrder(tuple(
            frozenset({FinitePlay(p)}) for p in ranked[node]
        )))
        permitted[i + 1] = frozenset(FinitePlay(p) for p in ranked[node])
    game = Game(len(players), tuple(vertices), frozenset(edges), owner,
                tuple(prefs), {})
    return OneTargetGame(game, permitted)
