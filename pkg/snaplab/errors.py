"""
Exception hierarchy for snaplab.

Validation failures derive from ValueError as well, so callers that only
catch ValueError keep working.
"""

from typing import Any


class SnaplabError(Exception):
    """Base class for all snaplab errors."""


class InvalidComputation(SnaplabError, ValueError):
    """A computation violates its invariants (ordering, ids, event kinds)."""


class InvalidConfig(SnaplabError, ValueError):
    """A workload, plan or campaign configuration is out of range."""


class LengthMismatch(SnaplabError, ValueError):
    """Two vectors that must have the same length do not."""


class SameEvent(SnaplabError, ValueError):
    """An operation on two distinct events received the same event twice."""


class TooLarge(SnaplabError):
    """A computation is too large for exhaustive enumeration."""


class RecordFormatError(SnaplabError, ValueError):
    """A record file is malformed or has an unsupported format version."""


class InternalImplicationViolation(SnaplabError, AssertionError):
    """A verdict contradicts an implication that must hold (checker bug)."""


class CounterexampleFound(SnaplabError):
    """
    A campaign found a case contradicting one of the verified implications.

    Attributes:
        implication: Name of the violated implication
        bundle: Reproduction bundle (seed, config, plan, snapshot, verdict)
    """

    def __init__(self, implication: str, bundle: dict[str, Any]):
        self.implication = implication
        self.bundle = bundle
        super().__init__(
            f"Counterexample to '{implication}' "
            f"(seed={bundle.get('seed')}, strategy={bundle.get('plan', {}).get('strategy')})"
        )
