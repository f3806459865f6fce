from puflock.exceptions import ConfigurationError, ParseError

class LayerIndexError(ConfigurationError):
    pass

class EmptyDatasetError(ConfigurationError):
    pass

class CountMismatchError(ParseError):
    pass
