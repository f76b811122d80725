"""Exception types raised across the toolkit.

Every error derives from :class:`SigrepError` so callers can catch the whole
family at once.  The concrete names describe the violated precondition.
"""


class SigrepError(Exception):
    """Base class for all toolkit errors."""


class MapNotTotal(SigrepError):
    """A point map leaves some source point without an image."""


class DegenerateMeasure(SigrepError):
    """The space carries total measure zero, so no measure algebra exists."""


class NotNonsingular(SigrepError):
    """A map pulls some null set back to a non-null set."""


class NotIMP(SigrepError):
    """A map claimed to be measure preserving is not."""


class NotHom(SigrepError):
    """A mapping between algebras fails the Boolean homomorphism laws."""


class NonConstantOnAtom(SigrepError):
    """A function takes more than one value on the points of some atom."""


class SpaceMismatch(SigrepError):
    """Operands live over different spaces (or algebras) and cannot combine."""


class NotADirectSum(SigrepError):
    """The space was not produced by a direct-sum construction."""


class BadBreakpoints(SigrepError):
    """A segmentation's breakpoints are not sorted, in range, and distinct."""


class IntervalMismatch(SigrepError):
    """A segment's interval does not match what an arrow or operation expects."""


class EmptySignal(SigrepError):
    """An operation that needs at least one sample received none."""


class CorruptContainer(SigrepError):
    """An encoded container is structurally invalid (magic, lengths, trailing)."""


class PolicyMismatch(SigrepError):
    """A container's declared arrow policy disagrees with its records."""
