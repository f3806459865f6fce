from puflock.exceptions import ConfigurationError

class UnknownEventError(ConfigurationError):
    pass

class CloneSeedError(ConfigurationError):
    pass
