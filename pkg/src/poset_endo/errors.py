"""Exception types shared across the package."""


class PosetError(Exception):
    """Base class for all structured errors raised by this package."""


class IndexOutOfRange(PosetError):
    """A cover pair references an element outside 0..n-1."""


class DuplicateCover(PosetError):
    """The same cover pair appears more than once."""


class CycleDetected(PosetError):
    """The cover pairs contain a directed cycle (including self-loops)."""


class RedundantCover(PosetError):
    """A cover pair is implied by a longer cover path and must be dropped."""


class NotGradedError(PosetError):
    """Raised by helpers that require a graded poset.

    Carries the two maximal chains of unequal length as ``witness``.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class EmptySelection(PosetError):
    """A rank selection matched no elements."""


class RankOutOfRange(PosetError):
    """A requested rank or rank interval falls outside 0..top_rank."""


class SizeLimit(PosetError):
    """An exhaustive operation was asked to exceed its hard size cap."""


class BudgetExceeded(PosetError):
    """A search passed its node budget; the count is abandoned, never truncated."""


class NotUpSingle(PosetError):
    """The element does not have exactly one upper cover."""


class NotOlderSibling(PosetError):
    """The target element's covers do not contain the source element's covers."""


class NotCentral(PosetError):
    """The element is not comparable to every extremal element of the window."""


class WrongCase(PosetError):
    """A constructor received a pair classification of the wrong kind."""


class NotOrderPreserving(PosetError):
    """A constructed map failed its order-preservation check."""


class SizeMismatch(PosetError):
    """Two morphisms being composed live on posets of different sizes."""


class GlueMismatch(PosetError):
    """A stacking interface does not match the block's boundary levels."""


class RetryExhausted(PosetError):
    """Random generation hit its retry cap without meeting the constraints."""


class ParseError(PosetError):
    """An input file or inline spec is malformed."""


class UnknownSuite(PosetError):
    """The requested verification suite does not exist."""
