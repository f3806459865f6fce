from typing import \
    Any, Dict, List, \
    Mapping, Optional

import json, os, sys

from puflock._utils.json_encoder import JSONEncoder
from puflock._utils.logging import ColorLogger

from puflock.exceptions import PuflockBaseException

from ._commands import COMMANDS

from ._config import CliConfig, MACHINE_SEED_ENV

from ._parser import build_parser

EXIT_CODES = {
    "usage": 2,
    "parse": 3,
    "dimension": 4,
    "missing_machine_seed": 5,
    "configuration": 6,
    "io": 7
}

def _format_value(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.4f}"

    return str(value)

def _print_human(result: Mapping[Any, Any], indent: str = "") -> None:
    for key, value in result.items():
        label = key.replace("_", " ").capitalize() if isinstance(key, str) else _format_value(key)

        if isinstance(value, Mapping):
            print(f"{indent}{label}:")

            _print_human(value, indent + "  ")
        elif isinstance(value, list):
            print(f"{indent}{label} = {', '.join(_format_value(item) for item in value)}")
        else:
            print(f"{indent}{label} = {_format_value(value)}")

def _report_error(error: BaseException, category: str, as_json: bool) -> None:
    if as_json:
        print(json.dumps({ "error": category, "message": str(error) }), file=sys.stderr)
    else:
        print(f"puflock: {category} error: {error}", file=sys.stderr)

def main(argv: Optional[List[str]] = None, environ: Optional[Mapping[str, str]] = None) -> int:
    """
    Entry point of the <puflock> command. Returns the process exit code:
    0 on success, a category-specific code on a known failure and 1 otherwise.
    """

    parser = build_parser()

    try:
        args = parser.parse_args(argv)
    except SystemExit as error:
        return error.code if isinstance(error.code, int) else EXIT_CODES["usage"]

    logger = ColorLogger("puflock", level=args.log_level)

    try:
        if args.log_file:
            logger.register(filename=args.log_file)

        config = CliConfig.from_arguments(args, os.environ if environ is None else environ)

        if config.machine_seed is not None and getattr(args, "machine_seed", None) is None:
            logger.debug("machine seed taken from $%s", MACHINE_SEED_ENV)

        result: Dict[str, Any] = COMMANDS[args.command](args, config, logger)
    except PuflockBaseException as error:
        _report_error(error, error.category, args.json)

        return EXIT_CODES.get(error.category, 1)
    except OSError as error:
        _report_error(error, "io", args.json)

        return EXIT_CODES["io"]

    if args.json:
        print(json.dumps(result, cls=JSONEncoder))
    else:
        _print_human(result)

    return 0

def main_entry() -> None:
    sys.exit(main())
