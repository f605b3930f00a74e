"""Exception types shared across the package."""


class InvindelError(Exception):
    """Base class for all invindel-specific errors."""


class EmptyInput(InvindelError, ValueError):
    pass


class MalformedToken(InvindelError, ValueError):
    pass


class DuplicateMarker(InvindelError, ValueError):
    pass


class TooFewCommonMarkers(InvindelError, ValueError):
    pass


class NotLinear(InvindelError, ValueError):
    pass


class AnchorNotCommon(InvindelError, ValueError):
    pass


class OddRunCountAboveOne(InvindelError, ValueError):
    pass


class ShortPathOnGoodNode(InvindelError, ValueError):
    pass


class OddLeafCount(InvindelError, ValueError):
    pass


class PreconditionViolated(InvindelError, ValueError):
    pass


class DegenerateTree(InvindelError, ValueError):
    pass


class BudgetExceeded(InvindelError, RuntimeError):
    pass


class UnknownComposition(InvindelError, RuntimeError):
    pass


class NoCaseMatched(InvindelError, RuntimeError):
    pass
