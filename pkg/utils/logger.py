"""
Centralized logging configuration for the coprime toolkit

Every module logger is a child of the single 'coprime' logger, which owns the
handlers: a console handler on stderr (stdout carries command reports) and,
when LOG_DIR is set, a daily application log plus an error-only log.
"""

import functools
import json
import logging
import sys
import time
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

ROOT_LOGGER = "coprime"


class JSONFormatter(logging.Formatter):
    """
    Custom JSON formatter for structured logging
    One object per line; toolkit errors keep their type and details
    """

    def format(self, record: logging.LogRecord) -> str:
        log_data = {
            'timestamp': datetime.now(timezone.utc).isoformat(),
            'level': record.levelname,
            'logger': record.name,
            'message': record.getMessage(),
            'location': f"{record.module}:{record.funcName}:{record.lineno}",
        }

        if record.exc_info:
            log_data['exception'] = self.formatException(record.exc_info)

        extra = getattr(record, 'extra_data', None)
        if extra:
            log_data['extra'] = extra

        return json.dumps(log_data, sort_keys=True, default=str)


class ColoredFormatter(logging.Formatter):
    """Level-colored console formatter, used only when stderr is a terminal"""

    COLORS = {
        'DEBUG': '\033[36m',
        'INFO': '\033[32m',
        'WARNING': '\033[33m',
        'ERROR': '\033[31m',
        'CRITICAL': '\033[35m',
    }
    RESET = '\033[0m'

    def format(self, record: logging.LogRecord) -> str:
        levelname = record.levelname
        color = self.COLORS.get(levelname)
        if color:
            record.levelname = f"{color}{levelname}{self.RESET}"
        try:
            return super().format(record)
        finally:
            record.levelname = levelname


class ReportedErrorFilter(logging.Filter):
    """
    Drop console records for errors the CLI already printed as a JSON error object.

    The record still reaches the file handlers.
    """

    def filter(self, record: logging.LogRecord) -> bool:
        return not getattr(record, 'reported', False)


def _file_handlers(log_dir: str, use_json: bool):
    log_path = Path(log_dir)
    log_path.mkdir(parents=True, exist_ok=True)
    stamp = datetime.now().strftime('%Y%m%d')

    if use_json:
        file_format = JSONFormatter()
    else:
        file_format = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(module)s:%(funcName)s:%(lineno)d - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )

    app_handler = logging.FileHandler(log_path / f"coprime_{stamp}.log", encoding="utf-8")
    app_handler.setLevel(logging.DEBUG)
    error_handler = logging.FileHandler(log_path / f"errors_{stamp}.log", encoding="utf-8")
    error_handler.setLevel(logging.ERROR)
    for handler in (app_handler, error_handler):
        handler.setFormatter(file_format)
    return [app_handler, error_handler]


def setup_logger(
    log_level: str = "WARNING",
    log_dir: Optional[str] = None,
    use_json: bool = False,
    use_colors: bool = True
) -> logging.Logger:
    """
    Configure the 'coprime' root logger once

    Args:
        log_level: Console level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_dir: Directory for log files (None means console only)
        use_json: JSON lines in the log files instead of plain text
        use_colors: Colored levels when stderr is a terminal

    Returns:
        The configured root logger
    """
    root = logging.getLogger(ROOT_LOGGER)
    if root.handlers:
        return root

    level = getattr(logging, log_level.upper(), logging.WARNING)
    root.propagate = False

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.addFilter(ReportedErrorFilter())
    fmt = '%(levelname)s %(name)s: %(message)s'
    if use_colors and sys.stderr.isatty():
        console_handler.setFormatter(ColoredFormatter(fmt))
    else:
        console_handler.setFormatter(logging.Formatter(fmt))
    root.addHandler(console_handler)

    if log_dir:
        for handler in _file_handlers(log_dir, use_json):
            root.addHandler(handler)
        root.setLevel(logging.DEBUG)
    else:
        root.setLevel(level)

    return root


def get_logger(name: str) -> logging.Logger:
    """
    Get a toolkit logger, configuring the root from Config on first use

    Args:
        name: Logger name (typically __name__)

    Returns:
        Logger named 'coprime.<name>'
    """
    root = logging.getLogger(ROOT_LOGGER)
    if not root.handlers:
        from config import Config

        setup_logger(
            log_level=Config.LOG_LEVEL,
            log_dir=Config.LOG_DIR,
            use_json=Config.LOG_FORMAT.lower() == 'json',
        )
    return root.getChild(name)


def set_level(level: str) -> None:
    """Change the console level (the --log-level flag); file logs stay at DEBUG"""
    numeric = getattr(logging, level.upper(), None)
    if not isinstance(numeric, int):
        raise ValueError(f"unknown log level {level!r}")
    root = logging.getLogger(ROOT_LOGGER)
    has_files = False
    for handler in root.handlers:
        if isinstance(handler, logging.FileHandler):
            has_files = True
        else:
            handler.setLevel(numeric)
    root.setLevel(logging.DEBUG if has_files else numeric)


def log_execution_time(logger: logging.Logger):
    """
    Decorator to log function execution time

    Usage:
        @log_execution_time(logger)
        def build_coprimary_filtration(module, order):
            ...
    """

    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            start = time.perf_counter()
            logger.debug(f"Starting {func.__name__}")

            try:
                result = func(*args, **kwargs)
            except Exception as e:
                elapsed_ms = (time.perf_counter() - start) * 1000
                logger.debug(
                    f"{func.__name__} failed after {elapsed_ms:.1f}ms: {type(e).__name__}",
                    extra={'extra_data': {'elapsed_ms': elapsed_ms, 'function': func.__name__}}
                )
                raise

            elapsed_ms = (time.perf_counter() - start) * 1000
            logger.info(
                f"{func.__name__} completed in {elapsed_ms:.1f}ms",
                extra={'extra_data': {'elapsed_ms': elapsed_ms, 'function': func.__name__}}
            )
            return result

        return wrapper
    return decorator
