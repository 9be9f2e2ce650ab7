"""
Logging configuration for the command line
"""
import logging
import sys

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def level_for(verbosity: int, configured: str = "WARNING") -> int:
    """-v raises the configured level to INFO, -vv to DEBUG"""
    if verbosity >= 2:
        return logging.DEBUG
    if verbosity == 1:
        return logging.INFO
    level = logging.getLevelName(str(configured).upper())
    return level if isinstance(level, int) else logging.WARNING


def configure_logging(level: int = logging.WARNING) -> logging.Logger:
    """Install a single stderr handler on the root logger"""
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(handler)
    root.setLevel(level)
    return root
