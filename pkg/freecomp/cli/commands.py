import argparse
import contextlib
import importlib
import pkgutil
import re
import sys
from inspect import cleandoc
from pathlib import Path

import freecomp.cli
from freecomp.errors import FreecompError

COMMAND_NAME_RE = re.compile(r'^[a-z][a-z0-9_-]*$', re.I)
PROG_NAME = Path(sys.argv[0]).name
commands = {}
"""All loaded commands"""


def module_name(name: str) -> str:
    """``verify-coalgebra`` lives in ``verify_coalgebra.py``."""
    return name.replace('-', '_')


# options whose values may start with a dash: grids and points left of the axis
DASH_VALUE_OPTIONS = ("--grid", "--z")
NEGATIVE_VALUE_RE = re.compile(r"^-[\d.]")


def glue_dash_values(args, options=DASH_VALUE_OPTIONS) -> list:
    """``--grid -3:3:10`` becomes ``--grid=-3:3:10`` so argparse keeps the value."""
    glued = []
    pending = None
    for arg in args:
        if pending is not None:
            if NEGATIVE_VALUE_RE.match(arg):
                glued[-1] = f"{pending}={arg}"
            else:
                glued.append(arg)
            pending = None
            continue
        glued.append(arg)
        pending = arg if arg in options else None
    return glued


class Command:
    name = None
    description = None
    epilog = None
    _parser = None

    def __init_subclass__(cls):
        cls.name = cls.name or cls.__name__.lower()
        module = cls.__module__.rpartition('.')[2]
        if not cls.is_valid_name(cls.name):
            raise ValueError(
                f"Command name {cls.name!r} "
                f"must match {COMMAND_NAME_RE.pattern!r}")
        if module_name(cls.name) != module:
            raise ValueError(
                f"Command name {cls.name!r} "
                f"must match Module name {module!r}")
        commands[cls.name] = cls

    @property
    def prog(self):
        return f"{PROG_NAME} {self.name}"

    @property
    def parser(self):
        if not self._parser:
            self._parser = argparse.ArgumentParser(
                formatter_class=argparse.RawDescriptionHelpFormatter,
                prog=self.prog,
                description=cleandoc(self.description or self.__doc__ or ""),
                epilog=cleandoc(self.epilog or ""),
            )
        return self._parser

    def add_common_arguments(self, parser):
        parser.add_argument(
            "--config",
            "-c",
            type=str,
            help="Path to configuration file (default: ./freecomp.conf if exists)",
        )
        parser.add_argument(
            "--json",
            action="store_true",
            help="Print the report as JSON instead of tables",
        )
        parser.add_argument(
            "--log-level",
            type=str,
            choices=["DEBUG", "INFO", "WARNING", "ERROR"],
            help="Logging level (default: from config)",
        )

    def setup(self, args):
        """Load configuration, apply CLI overrides and configure logging."""
        from freecomp.config import get_config
        from freecomp.log import setup_logging

        config = get_config(config_file=args.config)
        config.update_from_args(vars(args))
        setup_logging(config)
        return config

    def parse_args(self, cmdargs):
        return self.parser.parse_args(args=glue_dash_values(cmdargs))

    def run(self, cmdargs) -> int:
        raise NotImplementedError

    @classmethod
    def is_valid_name(cls, name):
        return re.match(COMMAND_NAME_RE, name)


def load_internal_commands():
    """Import every module of ``freecomp.cli`` so its commands register."""
    for module in pkgutil.iter_modules(freecomp.cli.__path__):
        importlib.import_module(f"freecomp.cli.{module.name}")


def find_command(name: str) -> Command | None:
    """Registered command, importing its module on first use."""
    if name not in commands and Command.is_valid_name(name):
        with contextlib.suppress(ImportError):
            importlib.import_module(f"freecomp.cli.{module_name(name)}")
    return commands.get(name)


def execute_command(argv=None):
    args = sys.argv[1:] if argv is None else list(argv)

    if len(args) and not args[0].startswith('-'):
        # Command specified, search for it
        command_name = args[0]
        args = args[1:]
    else:
        # No command specified, show help
        command_name = 'help'
        args = [x for x in args if x not in ('-h', '--help')]

    command = find_command(command_name)
    if not command:
        message = (
            f"Unknown command {command_name!r}.\n"
            f"Use '{PROG_NAME} --help' to see the list of available commands."
        )
        sys.exit(message)

    freecomp.cli.COMMAND = command_name
    try:
        status = command().run(args)
    except FreecompError as e:
        sys.exit(f"{command_name}: {e}")
    if status:
        sys.exit(status)
