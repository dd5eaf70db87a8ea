import logging
import os
from datetime import datetime


LOG_DIR = os.path.join(os.getcwd(), 'logs')
_FORMAT = '%(asctime)s %(levelname)s [%(name)s] %(message)s'


def _make_log_path():
    os.makedirs(LOG_DIR, exist_ok=True)
    timestamp = datetime.now().strftime('%Y%m%d_%H%M%S')
    return os.path.join(LOG_DIR, f"run_{timestamp}.log")


def configure_root_logger(level=logging.INFO):
    """Configure root logger to write to a timestamped file only.

    Idempotent: later calls return without adding handlers. Stream handlers
    are removed so stdout carries command output and nothing else.
    """
    root = logging.getLogger()  # all loggers propagate to root
    if getattr(root, '_pcdlab_configured', False):
        return

    root.setLevel(level)

    for h in list(root.handlers):
        if isinstance(h, logging.StreamHandler) and not isinstance(h, logging.FileHandler):
            root.removeHandler(h)

    fh = logging.FileHandler(_make_log_path(), encoding='utf-8', delay=True)
    fh.setLevel(logging.DEBUG)
    fh.setFormatter(logging.Formatter(_FORMAT))
    root.addHandler(fh)

    root._pcdlab_configured = True


def set_log_level(level):
    """Change the root level after configuration, e.g. for a --verbose flag."""
    configure_root_logger()
    logging.getLogger().setLevel(level)


def get_logger(name: str = None):
    """
    Pass __name__ to get the module's logger.
    Ensures root logger is configured on first call.
    """
    configure_root_logger()
    return logging.getLogger(name)
