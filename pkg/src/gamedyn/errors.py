"""Exception types shared across the library."""


class GameDynError(Exception):
    """Base class for all library errors."""


class GameFormatError(GameDynError):
    """Malformed game or SPP document (syntax or schema)."""

    def __init__(self, message, locus=None):
        super().__init__(message if locus is None else f"{locus}: {message}")
        self.locus = locus


class UnknownVertex(GameDynError):
    def __init__(self, vertex, context=""):
        super().__init__(f"unknown vertex {vertex!r}" + (f" in {context}" if context else ""))
        self.vertex = vertex


class UnknownEdge(GameDynError):
    def __init__(self, edge):
        super().__init__(f"edge {edge!r} is not in the arena")
        self.edge = edge


class NotMaximal(GameDynError):
    """A finite vertex sequence ends in a non-terminal vertex."""

    def __init__(self, vertex):
        super().__init__(f"path ends in non-terminal vertex {vertex!r}")
        self.vertex = vertex


class StateSpaceTooLarge(GameDynError):
    def __init__(self, count, guard):
        super().__init__(f"state space has {count} elements, guard is {guard} (use force to override)")
        self.count = count
        self.guard = guard


class CyclicArena(GameDynError):
    """History-based dynamics require an acyclic arena."""


class NonDeterministicBestReply(GameDynError):
    def __init__(self, player, targets):
        super().__init__(
            f"player {player} has {len(targets)} distinct strictly-improving best replies"
        )
        self.player = player
        self.targets = targets


class NotDeletable(GameDynError):
    MULTIPLE_SUCCESSORS = "MultipleSuccessors"
    PREDECESSOR_CONFLICT = "PredecessorConflict"
    PREFERENCE_COLLAPSE = "PreferenceCollapse"

    def __init__(self, vertex, reason):
        super().__init__(f"vertex {vertex!r} is not deletable: {reason}")
        self.vertex = vertex
        self.reason = reason


class ScriptStepError(GameDynError):
    def __init__(self, index, step, cause):
        super().__init__(f"deletion script failed at step {index} ({step}): {cause}")
        self.index = index
        self.step = step
        self.cause = cause


class SourceMismatch(GameDynError):
    def __init__(self, e1, e2):
        super().__init__(f"edges {e1} and {e2} do not share a source vertex")


class SearchBudgetExceeded(GameDynError):
    def __init__(self, budget):
        super().__init__(f"search budget of {budget} expansions exceeded (result inconclusive)")
        self.budget = budget


class InvalidSDW(GameDynError):
    """A claimed strong dispute wheel fails re-verification."""


class SuffixClosureRepairNeeded(GameDynError):
    def __init__(self, missing):
        super().__init__(
            "permitted paths are not suffix-closed; missing: "
            + ", ".join("->".join(p) for p in sorted(missing))
            + " (pass complete_suffixes=True to auto-repair)"
        )
        self.missing = missing
