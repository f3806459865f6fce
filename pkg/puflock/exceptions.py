from typing import Optional

class PuflockBaseException(Exception):
    """
    Base class for every custom exception thrown by puflock.
    """

    category = "error"

class UsageError(PuflockBaseException):
    category = "usage"

class ConfigurationError(PuflockBaseException):
    category = "configuration"

class DimensionError(PuflockBaseException):
    category = "dimension"

class MissingMachineSeedError(UsageError):
    category = "missing_machine_seed"

class StorageError(PuflockBaseException):
    category = "io"

class ParseError(PuflockBaseException):
    category = "parse"

    def __init__(self, message: str, offset: Optional[int] = None) -> None:
        super().__init__(message)

        self.offset = offset

class MagicMismatchError(ParseError):
    pass

class VersionMismatchError(ParseError):
    pass

class TruncatedFileError(ParseError):
    pass
