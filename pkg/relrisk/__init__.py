import logging
from relrisk import config

__version__ = '0.1.0'

# Setup Logging
LOG_PATH = config.LOG_PATH
LOGGER = logging.getLogger(__name__)
try:
    HANDLER = logging.FileHandler(filename=LOG_PATH, mode='a+')
except OSError:
    HANDLER = logging.NullHandler()
FORMATTER = logging.Formatter(config.LOG_FORMAT)
HANDLER.setFormatter(FORMATTER)
LOGGER.addHandler(HANDLER)
LOGGER.setLevel(getattr(logging, config.LOG_LEVEL, logging.INFO))
