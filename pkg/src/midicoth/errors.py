# src/midicoth/errors.py
# Exceptions raised by the library. The CLI is the only place that turns
# them into exit codes.


class MidicothError(Exception):
    """Base class for every recoverable error the package raises."""


class ContainerFormatError(MidicothError):
    """Header is short, has the wrong magic/version, or carries unknown flag bits."""


class CorruptStreamError(MidicothError):
    """Payload does not decode to the declared number of bytes."""


class StreamExhaustedError(CorruptStreamError):
    """The arithmetic decoder ran past the end of the payload."""


class ModelFault(RuntimeError):
    # Internal logic error (e.g. normalizing an all-zero vector).
    # Never produced by bad input, so it is not a MidicothError.
    pass
