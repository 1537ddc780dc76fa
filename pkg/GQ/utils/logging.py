import os
import logging
from logging.handlers import RotatingFileHandler

EVENTS_LEVEL_NUM = 38
DEFAULT_LOG_BACKUP_COUNT = 10

LOG_FORMAT = "%(asctime)s | %(levelname)s | %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

# Package-wide logger, silent until the CLI (or a caller) attaches a handler.
logger = logging.getLogger("GQ")
logger.addHandler(logging.NullHandler())


def setup_console_logging(debug: bool = False, info: bool = False) -> logging.Logger:
    """Attach a stderr handler to the package logger at the requested level."""
    level = logging.DEBUG if debug else logging.INFO if info else logging.WARNING
    logger.setLevel(level)

    for handler in list(logger.handlers):
        if getattr(handler, "_gq_console", False):
            logger.removeHandler(handler)

    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT))
    handler._gq_console = True
    logger.addHandler(handler)
    return logger


def setup_events_logger(full_path, events_retention_size):
    logging.addLevelName(EVENTS_LEVEL_NUM, "EVENT")

    events = logging.getLogger("GQ.event")
    events.setLevel(EVENTS_LEVEL_NUM)
    events.propagate = False

    def event(self, message, *args, **kws):
        if self.isEnabledFor(EVENTS_LEVEL_NUM):
            self._log(EVENTS_LEVEL_NUM, message, args, **kws)

    logging.Logger.event = event

    formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)

    target = os.path.join(full_path, "events.log")
    if not any(
        isinstance(h, RotatingFileHandler) and h.baseFilename == os.path.abspath(target)
        for h in events.handlers
    ):
        file_handler = RotatingFileHandler(
            target,
            maxBytes=int(events_retention_size),
            backupCount=DEFAULT_LOG_BACKUP_COUNT,
        )
        file_handler.setFormatter(formatter)
        file_handler.setLevel(EVENTS_LEVEL_NUM)
        events.addHandler(file_handler)

    return events
