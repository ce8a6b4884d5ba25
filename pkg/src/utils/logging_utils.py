import os
import sys
import logging
import structlog
from config import LOGGING_CONFIG

_configured = False


def configure_logging(level: str = None) -> None:
    """
    Configures stdlib logging and structlog from LOGGING_CONFIG

    Args:
        level: Optional level name overriding LOGGING_CONFIG['level']
    """
    global _configured

    level_name = (level or LOGGING_CONFIG['level']).upper()
    handlers = [logging.StreamHandler(sys.stderr)]

    file_path = LOGGING_CONFIG['file_path']
    if file_path:
        os.makedirs(os.path.dirname(os.path.abspath(file_path)), exist_ok=True)
        handlers.append(logging.FileHandler(file_path))

    logging.basicConfig(
        level=getattr(logging, level_name, logging.INFO),
        format=LOGGING_CONFIG['format'],
        handlers=handlers,
        force=True,
    )

    renderer = (
        structlog.processors.JSONRenderer()
        if LOGGING_CONFIG['renderer'] == 'json'
        else structlog.dev.ConsoleRenderer(colors=False)
    )
    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.processors.TimeStamper(fmt='iso'),
            structlog.processors.format_exc_info,
            renderer,
        ],
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=False,
    )
    _configured = True


def get_logger(name: str) -> structlog.stdlib.BoundLogger:
    """Returns a structlog logger bound to the given module name"""
    if not _configured:
        configure_logging()
    return structlog.get_logger(name)
