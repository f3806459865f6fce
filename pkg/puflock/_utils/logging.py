from typing import \
    TYPE_CHECKING, Literal, Optional, TextIO

#pylint: disable-next=wildcard-import,unused-wildcard-import
from logging import *

from copy import copy

import sys

from puflock.exceptions import StorageError

if TYPE_CHECKING:
    _Level = Literal["NOTSET", "DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]

def _ansi(code: str) -> str:
    return f"\033[{code}m"

_NC = _ansi("0")

_LEVEL_COLORS = {
    "DEBUG": _ansi("1;97"),
    "INFO": _ansi("0;94"),
    "WARNING": _ansi("0;93"),
    "ERROR": _ansi("0;91"),
    "CRITICAL": _ansi("1;91")
}

_NAME_COLOR, _TIME_COLOR = _ansi("0;95"), _ansi("0;92")

_FORMAT = "%(asctime)s %(name)s %(levelname)s %(message)s"

_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

class _ColorFormatter(Formatter):
    def format(self, record: LogRecord) -> str:
        _record = copy(record)
        _record.name = _NAME_COLOR + record.name + _NC
        _record.levelname = _LEVEL_COLORS.get(record.levelname, "") + record.levelname + _NC

        return super().format(_record)

    #pylint: disable-next=invalid-name
    def formatTime(self, record: LogRecord, datefmt: Optional[str] = None) -> str:
        return _TIME_COLOR + super().formatTime(record, datefmt) + _NC

class ColorLogger(Logger):
    """
    Logger of the command-line tool: coloured lines on an interactive stderr,
    plain lines on pipes and in files added through <register>.
    """

    def __init__(self, name: str, level: "_Level" = "NOTSET", *,
                 stream: Optional[TextIO] = None) -> None:
        super().__init__(name, level)

        stream = sys.stderr if stream is None else stream

        isatty = getattr(stream, "isatty", None)

        handler = StreamHandler(stream=stream)

        if callable(isatty) and isatty():
            handler.setFormatter(fmt=_ColorFormatter(_FORMAT, _DATE_FORMAT))
        else:
            handler.setFormatter(fmt=Formatter(_FORMAT, _DATE_FORMAT))

        self.addHandler(hdlr=handler)

    def register(self, filename: str) -> None:
        try:
            handler = FileHandler(filename=filename, encoding="utf-8")
        except OSError as error:
            raise StorageError(f"Cannot open log file <{filename}>: {error}") from error

        handler.setFormatter(fmt=Formatter(_FORMAT, _DATE_FORMAT))
        self.addHandler(hdlr=handler)
