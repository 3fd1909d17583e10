import os
import sys
import logging
from logging.handlers import RotatingFileHandler
from typing import Optional

LOG_FORMAT = "%(asctime)s %(levelname)s [%(name)s] %(message)s"


def setup_logger(name: Optional[str] = None, log_file: Optional[str] = None, level: int = logging.WARNING) -> logging.Logger:
    """
    Create and return a logger for the rankdrift command line.
    - `name=None` configures the root logger so every package logger
      (`rank_core.evolutive`, `ingest.manifest`, ...) is captured.
    - With `log_file`, writes to a rotating file; otherwise to stderr.
    """
    logger = logging.getLogger(name)
    logger.setLevel(level)

    # Avoid adding multiple handlers if setup_logger is called twice
    if not any(getattr(h, "_rankdrift", False) for h in logger.handlers):
        if log_file:
            directory = os.path.dirname(log_file)
            if directory:
                os.makedirs(directory, exist_ok=True)
            # 1 MB per file, keep 3 backups
            handler: logging.Handler = RotatingFileHandler(
                log_file, maxBytes=1_000_000, backupCount=3, encoding="utf-8"
            )
        else:
            handler = logging.StreamHandler()

        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._rankdrift = True
        logger.addHandler(handler)
    else:
        # stderr may have been swapped since the first call (click's test runner does)
        for h in logger.handlers:
            if getattr(h, "_rankdrift", False) and type(h) is logging.StreamHandler:
                h.setStream(sys.stderr)

    return logger
