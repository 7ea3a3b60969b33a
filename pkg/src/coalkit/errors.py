"""Exception types raised across the package."""


class CoalkitError(Exception):
    """Base class for all package errors."""


class FormulaSyntaxError(CoalkitError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownAgent(CoalkitError, KeyError):
    pass


class UnknownState(CoalkitError, KeyError):
    pass


class SideConditionViolated(CoalkitError, ValueError):
    pass


class NotASubcoalition(CoalkitError, ValueError):
    pass


class OverlappingCoalitions(CoalkitError, ValueError):
    pass


class CoalitionMismatch(CoalkitError, ValueError):
    pass


class InvalidModel(CoalkitError, ValueError):
    """A model violates a structural invariant of its kind."""


class TooLarge(CoalkitError, ValueError):
    """Materialization would exceed the supported state bound."""


class CarrierMismatch(CoalkitError, ValueError):
    """Two models do not share states, agents and labeling."""


class EmptySetMember(CoalkitError, ValueError):
    pass


class EmptyActionUniverse(CoalkitError, ValueError):
    pass


class BoundsExceeded(CoalkitError, ValueError):
    pass


class UnknownSuite(CoalkitError, KeyError):
    pass


class ModelFileError(CoalkitError, ValueError):
    """Malformed model document."""
