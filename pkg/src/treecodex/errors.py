"""Exception hierarchy shared by every treecodex module."""

from __future__ import annotations


class TreeCodexError(ValueError):
    """Base class for domain errors (bad trees, bad codes, violated preconditions)."""


class InvalidLabel(TreeCodexError):
    """A successor or code entry lies outside its permitted label range."""


class CycleFound(TreeCodexError):
    """A successor map that was supposed to be a tree contains a cycle.

    ``cycles`` lists every cycle of the map; the message names the first one.
    """

    def __init__(self, cycles: list[tuple[int, ...]]):
        self.cycles = cycles
        shown = " ".join("(" + " ".join(map(str, c)) + ")" for c in cycles)
        super().__init__(f"not a tree: cycles {shown}")


class NoPathToRoot(TreeCodexError):
    """The successor chain of a vertex never reaches the root."""


class BoundExceeded(TreeCodexError):
    """An exhaustive enumeration was requested beyond its configured size bound."""


class NotATree(TreeCodexError):
    """An algorithm that assumes tree input detected a non-tree."""


class PreconditionViolated(TreeCodexError):
    """Inputs do not satisfy the documented precondition of an operation."""


class MalformedToken(TreeCodexError):
    """A weighted code token violates the ascent/descent shape constraint."""


class MalformedCode(TreeCodexError):
    """A code (plain or forest) has the wrong length or alphabet."""


class InvalidForest(TreeCodexError):
    """A forest successor map is malformed or has a non-root cycle."""


class NotACycle(TreeCodexError):
    """The vertices handed to a toggle do not form a cycle of the array's digraph."""


class StepBudgetExceeded(RuntimeError):
    """A Garsia–Milne walk ran longer than its step budget (diagnostic only)."""

    def __init__(self, budget: int):
        self.budget = budget
        super().__init__(f"walk exceeded its step budget of {budget} steps")
