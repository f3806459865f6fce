from puflock.exceptions import ConfigurationError

class UnknownChallengeError(ConfigurationError):
    pass

class ResponseWidthError(ConfigurationError):
    pass
