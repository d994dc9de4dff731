"""Arena representation, plays, preferences, parsing and validation.

A game is a finite directed arena whose non-terminal vertices are owned by
players, together with one ordinal preference order per player over the
positional plays (finite paths ending in a terminal vertex, or lassos).
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import GameFormatError, NotMaximal, UnknownVertex


# ---------------------------------------------------------------------------
# Plays


@dataclass(frozen=True)
class FinitePlay:
    """A maximal finite path; the last vertex is terminal."""

    path: tuple[str, ...]

    @property
    def start(self):
        return self.path[0]

    def vertices(self):
        return set(self.path)

    def steps(self):
        return list(zip(self.path, self.path[1:]))

    def __str__(self):
        return "->".join(self.path)


@dataclass(frozen=True)
class LassoPlay:
    """An ultimately-periodic infinite path: stem followed by a repeated loop.

    Canonical form: the loop is the primitive period and the stem is the
    shortest prefix realising the infinite word (the loop rotation is then
    forced by the word itself).
    """

    stem: tuple[str, ...]
    loop: tuple[str, ...]

    @property
    def start(self):
        return self.stem[0] if self.stem else self.loop[0]

    def vertices(self):
        return set(self.stem) | set(self.loop)

    def steps(self):
        seq = self.stem + self.loop
        pairs = list(zip(seq, seq[1:]))
        pairs.append((self.loop[-1], self.loop[0]))
        return pairs

    def __str__(self):
        stem = "->".join(self.stem)
        loop = "->".join(self.loop)
        return (stem + "->" if stem else "") + f"({loop})*"


Play = FinitePlay | LassoPlay


def _primitive_period(loop):
    """Shortest word w such that loop is a power of w."""
    n = len(loop)
    for k in range(1, n + 1):
        if n % k == 0 and loop == loop[:k] * (n // k):
            return loop[:k]
    return loop


def canonicalize(path: Iterable[str], loop: Iterable[str] | None = None,
                 terminals: frozenset[str] | None = None) -> Play:
    """Normalise a syntactic maximal path into a canonical Play.

    With ``loop=None`` the sequence must end in a terminal vertex (when
    ``terminals`` is given this is checked, raising NotMaximal otherwise).
    For lassos the loop is reduced to its primitive period and the stem is
    shortened by absorbing trailing vertices into loop rotations.
    """
    stem = tuple(path)
    if loop is None:
        if not stem:
            raise GameFormatError("empty play")
        if terminals is not None and stem[-1] not in terminals:
            raise NotMaximal(stem[-1])
        return FinitePlay(stem)
    loop = _primitive_period(tuple(loop))
    if not loop:
        raise GameFormatError("empty lasso loop")
    # Absorb the stem tail: s + (l1..lk)^w == s[:-1] + (lk l1..lk-1)^w
    # whenever the stem ends with lk.
    stem = list(stem)
    loop = list(loop)
    while stem and stem[-1] == loop[-1]:
        stem.pop()
        loop = [loop[-1]] + loop[:-1]
    return LassoPlay(tuple(stem), tuple(loop))


def play_is_valid(game: "Game", play: Play) -> bool:
    """True iff every step of the play is an arena edge and it is maximal."""
    for u, v in play.steps():
        if (u, v) not in game.edges:
            return False
    if isinstance(play, FinitePlay):
        return play.path[-1] in game.terminals and all(v in game.vertex_set for v in play.path)
    return all(v in game.vertex_set for v in play.vertices())


# ---------------------------------------------------------------------------
# Preferences


class Comparison(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class PreferenceOrder:
    """Ordinal ranks, best class first; unmentioned plays share a bottom class."""

    ranks: tuple[frozenset[Play], ...]

    def rank_of(self, play: Play) -> int:
        for i, cls in enumerate(self.ranks):
            if play in cls:
                return i
        return len(self.ranks)

    def compare(self, p1: Play, p2: Play) -> Comparison:
        """LESS iff p1 is strictly worse than p2."""
        r1, r2 = self.rank_of(p1), self.rank_of(p2)
        if r1 > r2:
            return Comparison.LESS
        if r1 < r2:
            return Comparison.GREATER
        return Comparison.EQUAL

    def mentioned(self):
        out = set()
        for cls in self.ranks:
            out |= set(cls)
        return out


# ---------------------------------------------------------------------------
# Games


@dataclass(frozen=True)
class Game:
    n_players: int
    vertices: tuple[str, ...]
    edges: frozenset[tuple[str, str]]
    owner: Mapping[str, int]
    preferences: tuple[PreferenceOrder, ...]
    edge_labels: Mapping[tuple[str, str], str]

    @property
    def vertex_set(self):
        return frozenset(self.vertices)

    @property
    def terminals(self) -> frozenset[str]:
        with_out = {u for u, _ in self.edges}
        return frozenset(v for v in self.vertices if v not in with_out)

    def successors(self, v: str) -> tuple[str, ...]:
        return tuple(sorted(w for u, w in self.edges if u == v))

    def predecessors(self, v: str) -> tuple[str, ...]:
        return tuple(sorted(u for u, w in self.edges if w == v))

    def non_terminals(self) -> tuple[str, ...]:
        terms = self.terminals
        return tuple(v for v in sorted(self.vertices) if v not in terms)

    def preference(self, player: int) -> PreferenceOrder:
        return self.preferences[player - 1]

    def owned_by(self, player: int) -> tuple[str, ...]:
        return tuple(v for v in sorted(self.owner) if self.owner[v] == player)

    def key(self):
        """Canonical hashable identity, used for memoisation."""
        prefs = tuple(
            tuple(tuple(sorted(cls, key=str)) for cls in p.ranks) for p in self.preferences
        )
        return (
            self.n_players,
            tuple(sorted(self.vertices)),
            tuple(sorted(self.edges)),
            tuple(sorted(self.owner.items())),
            prefs,
        )


def compare_plays(game: Game, player: int, p1: Play, p2: Play) -> Comparison:
    return game.preference(player).compare(p1, p2)


# ---------------------------------------------------------------------------
# Play enumeration


def positional_plays(game: Game, v: str) -> frozenset[Play]:
    """All plays from v that some positional strategy profile produces.

    These are exactly the rho-shaped walks: a simple path to a terminal
    vertex, or a simple stem entering a simple cycle.
    """
    if v not in game.vertex_set:
        raise UnknownVertex(v)
    terms = game.terminals
    out: set[Play] = set()

    def walk(path, on_path):
        last = path[-1]
        if last in terms:
            out.add(FinitePlay(tuple(path)))
            return
        for w in game.successors(last):
            if w in on_path:
                i = path.index(w)
                out.add(canonicalize(path[:i], path[i:]))
            else:
                path.append(w)
                on_path.add(w)
                walk(path, on_path)
                on_path.discard(w)
                path.pop()

    walk([v], {v})
    return frozenset(out)


# ---------------------------------------------------------------------------
# Parsing and validation

_GAME_FIELDS = {"players", "vertices", "edges", "owner", "preferences"}


def _parse_play(obj, where):
    if not isinstance(obj, dict) or len(obj) != 1:
        raise GameFormatError("a play is {'path': [...]} or {'lasso': {...}}", where)
    if "path" in obj:
        seq = obj["path"]
        if not isinstance(seq, list) or not seq:
            raise GameFormatError("'path' must be a non-empty list of vertex ids", where)
        return canonicalize(seq)
    if "lasso" in obj:
        body = obj["lasso"]
        if not isinstance(body, dict) or set(body) != {"stem", "loop"}:
            raise GameFormatError("'lasso' must have exactly 'stem' and 'loop'", where)
        return canonicalize(body["stem"], body["loop"])
    raise GameFormatError(f"unknown play form {sorted(obj)}", where)


def parse_game(text: str) -> Game:
    """Parse and validate a game document (JSON syntax, see README)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GameFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise GameFormatError("top level must be an object")
    unknown = set(doc) - _GAME_FIELDS
    if unknown:
        raise GameFormatError(f"unknown fields {sorted(unknown)}")
    missing = _GAME_FIELDS - set(doc)
    if missing:
        raise GameFormatError(f"missing fields {sorted(missing)}")

    n = doc["players"]
    if not isinstance(n, int) or n < 1:
        raise GameFormatError("'players' must be a positive integer")
    vertices = doc["vertices"]
    if not isinstance(vertices, list) or len(set(vertices)) != len(vertices):
        raise GameFormatError("'vertices' must be a list of unique id strings")
    vset = set(vertices)

    edges = set()
    labels = {}
    for item in doc["edges"]:
        if not isinstance(item, list) or len(item) not in (2, 3):
            raise GameFormatError(f"edge {item} must be [from, to] or [from, to, label]")
        u, v = item[0], item[1]
        for x in (u, v):
            if x not in vset:
                raise UnknownVertex(x, context=f"edge {item[:2]}")
        if (u, v) in edges:
            raise GameFormatError(f"duplicate edge {[u, v]}")
        edges.add((u, v))
        if len(item) == 3:
            labels[(u, v)] = item[2]

    owner = {}
    for v, p in doc["owner"].items():
        if v not in vset:
            raise UnknownVertex(v, context="owner map")
        if not isinstance(p, int) or not 1 <= p <= n:
            raise GameFormatError(f"owner of {v!r} must be a player in 1..{n}")
        owner[v] = p

    prefs = []
    for i in range(1, n + 1):
        ranks = []
        for j, cls in enumerate(doc["preferences"].get(str(i), [])):
            plays = set()
            for obj in cls:
                play = _parse_play(obj, where=f"preferences[{i}][{j}]")
                for x in play.vertices():
                    if x not in vset:
                        raise UnknownVertex(x, context=f"preferences[{i}][{j}]")
                plays.add(play)
            ranks.append(frozenset(plays))
        prefs.append(PreferenceOrder(tuple(ranks)))
    unknown_players = set(doc["preferences"]) - {str(i) for i in range(1, n + 1)}
    if unknown_players:
        raise GameFormatError(f"preferences for unknown players {sorted(unknown_players)}")

    game = Game(
        n_players=n,
        vertices=tuple(sorted(vertices)),
        edges=frozenset(edges),
        owner=owner,
        preferences=tuple(prefs),
        edge_labels=labels,
    )
    problems = validate_game(game)
    if problems:
        raise GameFormatError("; ".join(problems))
    return game


def validate_game(game: Game) -> list[str]:
    """Diagnostics for every violated Game invariant (empty list iff valid)."""
    out = []
    terms = game.terminals
    for v in game.vertices:
        if v in terms and v in game.owner:
            out.append(f"TerminalOwned({v})")
        if v not in terms and v not in game.owner:
            out.append(f"MissingOwner({v})")
    for v in game.owner:
        if v not in game.vertex_set:
            out.append(f"UnknownVertex({v})")
    for u, v in game.edges:
        if u not in game.vertex_set or v not in game.vertex_set:
            out.append(f"UnknownEdgeEndpoint(({u},{v}))")
    for i, pref in enumerate(game.preferences, start=1):
        seen = set()
        for cls in pref.ranks:
            for play in cls:
                if play in seen:
                    out.append(f"DuplicatePlay(player {i}, {play})")
                seen.add(play)
                if not play_is_valid(game, play):
                    out.append(f"InvalidPlay(player {i}, {play})")
                elif canonicalize_play(play) != play:
                    out.append(f"NonCanonicalPlay(player {i}, {play})")
    return out


def canonicalize_play(play: Play) -> Play:
    if isinstance(play, FinitePlay):
        return FinitePlay(play.path)
    return canonicalize(play.stem, play.loop)
