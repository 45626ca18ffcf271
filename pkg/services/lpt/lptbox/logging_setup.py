"""
Structured logging - structlog processor chain rendered to stderr as JSON or console lines
"""

import logging
import sys

import structlog

from .settings import LoggingSettings


def configure_logging(settings: LoggingSettings) -> None:
    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, settings.level.upper(), logging.INFO),
        format="%(message)s",
        force=True,
    )

    renderer = (
        structlog.dev.ConsoleRenderer()
        if settings.renderer == "console"
        else structlog.processors.JSONRenderer()
    )

    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            renderer,
        ],
        wrapper_class=structlog.stdlib.BoundLogger,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )
