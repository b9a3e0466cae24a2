"""Exception hierarchy."""


class BeliefError(Exception):
    """Base class for every error raised by this package."""


class FrameError(BeliefError, ValueError):
    """Bad frame definition or a subset that does not belong to the frame."""


class FrameMismatchError(BeliefError, ValueError):
    """Two operands are defined over different frames."""


class InvalidMassError(BeliefError, ValueError):
    """A mass function violates range or normalization constraints."""


class TotalConflictError(BeliefError, ArithmeticError):
    """Dempster normalization impossible because the conflict is 1."""


class RedistributionError(BeliefError, ArithmeticError):
    """Partial combination found no subset mass to redistribute onto."""


class InversionError(BeliefError, ValueError):
    """A belief-function vector does not correspond to a valid mass function."""


class UnsupportedDimensionError(BeliefError, ValueError):
    """The requested operation is not defined for this frame size."""


class ParseError(BeliefError, ValueError):
    """Malformed text input; the message carries line/column coordinates."""
