import logging
import sys

ROOT_LOGGER = "freecomp"
DEFAULT_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"


def _configured(handler: logging.Handler, level: int, formatter: logging.Formatter) -> logging.Handler:
    handler.setLevel(level)
    handler.setFormatter(formatter)
    return handler


def setup_logging(config):
    """Attach stderr (and optionally a file) to the ``freecomp`` logger tree.

    Reports go to stdout, so log records never mix with ``--json`` output.
    Calling this again replaces the handlers of the previous call.
    """
    level_name = config.get("logging", "level", fallback="INFO").upper()
    level = logging.getLevelName(level_name)
    if not isinstance(level, int):
        level = logging.INFO
    formatter = logging.Formatter(config.get("logging", "format", fallback=DEFAULT_FORMAT))

    handlers = [_configured(logging.StreamHandler(sys.stderr), level, formatter)]
    if path := config.get("logging", "file", fallback=""):
        handlers.append(_configured(logging.FileHandler(path), level, formatter))

    logger = logging.getLogger(ROOT_LOGGER)
    logger.setLevel(level)
    for old in logger.handlers[:]:
        logger.removeHandler(old)
        old.close()
    logger.propagate = False
    for handler in handlers:
        logger.addHandler(handler)
    return logger
