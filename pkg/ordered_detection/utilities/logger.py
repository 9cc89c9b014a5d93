# ordered_detection/utilities/logger.py
"""
Centralized logging configuration for the ordered-detection experiments.

Usage:
    from ordered_detection.utilities.logger import get_logger
    logger = get_logger(__name__)
    logger.info("Sweep started")
"""

import os
import sys
import logging
from logging.handlers import RotatingFileHandler
from pathlib import Path


# Default log level from environment
DEFAULT_LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO').upper()

# Log directory
LOG_DIR = Path(__file__).parent.parent.parent / 'data' / 'logs'

CONSOLE_FORMAT = '[%(asctime)s] [%(levelname)s] [%(name)s] %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


def get_logger(name: str, level: str = None) -> logging.Logger:
    """
    Get a configured logger instance.

    Args:
        name: Logger name (typically __name__)
        level: Log level override (DEBUG, INFO, WARNING, ERROR)

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(name)

    # Only configure if not already set up
    if not logger.handlers:
        log_level = getattr(logging, (level or DEFAULT_LOG_LEVEL).upper(), logging.INFO)
        logger.setLevel(log_level)

        # Format: [2026-10-19 10:30:45] [INFO] [ordered_detection.simulation.sweep] Message
        console_handler = logging.StreamHandler(sys.stdout)
        console_handler.setLevel(log_level)
        console_handler.setFormatter(logging.Formatter(CONSOLE_FORMAT, datefmt=DATE_FORMAT))
        logger.addHandler(console_handler)

        # File handler (optional, only if LOG_DIR is writable)
        try:
            LOG_DIR.mkdir(parents=True, exist_ok=True)
            file_handler = RotatingFileHandler(
                LOG_DIR / 'ordered_detection.log',
                maxBytes=10 * 1024 * 1024,  # 10 MB
                backupCount=5
            )
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(logging.Formatter(
                '%(asctime)s | %(levelname)-8s | %(name)s | %(message)s',
                datefmt=DATE_FORMAT
            ))
            logger.addHandler(file_handler)
        except (OSError, PermissionError):
            pass

        logger.propagate = False

    return logger


def configure_root_logging(level: str = None):
    """
    Configure the root logger for the entire application.

    Call this once at application startup.
    """
    log_level = getattr(logging, (level or DEFAULT_LOG_LEVEL).upper(), logging.INFO)

    logging.basicConfig(
        level=log_level,
        format=CONSOLE_FORMAT,
        datefmt=DATE_FORMAT,
        handlers=[logging.StreamHandler(sys.stdout)]
    )


def setup_logging(level: str = None) -> logging.Logger:
    """
    Set up logging for the experiment CLI.

    Package loggers created at import time are moved to the requested level.
    """
    configure_root_logging(level)
    log_level = getattr(logging, (level or DEFAULT_LOG_LEVEL).upper(), logging.INFO)
    for name, existing in list(logging.Logger.manager.loggerDict.items()):
        if name.startswith('ordered_detection') and isinstance(existing, logging.Logger):
            existing.setLevel(log_level)
            for handler in existing.handlers:
                if isinstance(handler, logging.StreamHandler) and not isinstance(handler, RotatingFileHandler):
                    handler.setLevel(log_level)
    return get_logger('ordered_detection', level)
