from puflock.exceptions import ConfigurationError, ParseError

class HelperMismatchError(ConfigurationError):
    pass

class PercentageError(ConfigurationError):
    pass

class HelperOrderError(ParseError):
    pass
