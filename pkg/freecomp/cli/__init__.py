from . import commands


COMMAND = None

__all__ = [
    "commands"
]
