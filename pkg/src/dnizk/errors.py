"""Exception hierarchy shared by all protocol modules."""


class DnizkError(Exception):
    """Base class for every error raised by this package."""


# field
class NoPrimeInRange(DnizkError):
    pass


class DuplicateAbscissa(DnizkError):
    pass


class FieldMismatch(DnizkError):
    pass


# graph
class ConfigurationError(DnizkError):
    pass


# engine
class ProtocolParameterMismatch(DnizkError):
    pass


class MessageSizeViolation(DnizkError):
    pass


class PositiveInstanceSupplied(DnizkError):
    pass


class NotEnumerable(DnizkError):
    pass


# protocols
class ImproperWitness(DnizkError):
    pass


class IdOutOfRange(DnizkError):
    pass


class CodeParameterMismatch(DnizkError):
    pass


class WitnessInvalid(DnizkError):
    pass


class MalformedMessage(DnizkError):
    """Raised by node logic on a malformed certificate or message; the engine turns it into a reject."""
