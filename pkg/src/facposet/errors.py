"""Typed errors shared across the package."""


class FacposetError(Exception):
    """Base class for all package errors."""


class MalformedOracle(FacposetError):
    """Group oracle tables are not total or structurally broken."""


class ElementCapExceeded(FacposetError):
    """Materializing the group would exceed the element cap."""


class TargetUnreachable(FacposetError):
    """The target element never appeared in the length BFS."""


class InvalidInterval(FacposetError):
    """A labeled interval failed structural validation."""


class NotComparable(FacposetError):
    """Sub-interval endpoints are not comparable."""


class NoSuchEdge(FacposetError):
    """A word step or local move has no matching edge."""


class UnknownLabel(FacposetError):
    """A generator order omits (or adds) labels relative to the alphabet."""


class NotLabeled(FacposetError):
    """Operation requires edge labels but the interval has none."""


class NotAnAtom(FacposetError):
    """Operation requires a rank-1 node."""


class NotCompatible(FacposetError):
    """Operation requires a compatible generator order."""


class NotELLabeling(FacposetError):
    """Operation requires an order under which the labeling is EL."""


class NotAPermutationOfChains(FacposetError):
    """Chain order is not a permutation of the maximal chains."""


class ChainBudgetExceeded(FacposetError):
    """Chain enumeration exceeded the configured cap."""


class SearchBudgetExceeded(FacposetError):
    """A combinatorial search exceeded its budget."""


class ExtensionBudgetExceeded(FacposetError):
    """Linear extension enumeration exceeded its cap."""


class UnknownFixture(FacposetError):
    """No fixture with the requested name."""


class SizeCap(FacposetError):
    """Requested family member exceeds the size cap."""


class InternalCheckFailed(FacposetError):
    """Two independent computations of the same quantity disagree.

    This always indicates a bug (or a violated proved theorem) and is
    never raised on merely unusual input.
    """
