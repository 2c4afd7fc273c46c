"""
Loguru setup for command-line runs.

Human-readable records go to stderr so stdout stays free for command output.
REINHARDT_LOG_FILE adds a JSON-lines sink for long scans.
"""

import sys
from typing import Optional

from loguru import logger
from src.config.settings import settings

CONSOLE_FORMAT = (
    "<green>{elapsed.seconds:>5}s</green> | <level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan> - <level>{message}</level>"
)


def setup_logger(level: Optional[str] = None):
    """
    Replace loguru's default handler with the console sink and, when configured, a file sink.

    Args:
        level: Optional level overriding settings.log_level
    """
    logger.remove()
    level = (level or settings.log_level).upper()

    logger.add(sys.stderr, format=CONSOLE_FORMAT, level=level, colorize=sys.stderr.isatty())

    if settings.log_file:
        logger.add(settings.log_file, level=level, serialize=True, rotation="50 MB", retention=5)

    return logger


setup_logger()
