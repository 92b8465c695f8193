VERSION = "0.1.0"

from . import cli
