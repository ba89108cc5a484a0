from loguru import logger

import sys


def _stderr(message):
    # resolved per message so redirected streams (click's test runner, pipes) are honoured
    sys.stderr.write(message)


def setup_logger(verbose=False, log_file=None):
    # Remove default handler
    logger.remove()

    # stdout is reserved for reports (--json), so the console sink goes to stderr
    log_level = "DEBUG" if verbose else "INFO"
    logger.add(_stderr, format="{time:YYYY-MM-DD HH:mm:ss.SSS} | {level: <7} | {message}", level=log_level)

    # Add file handler if specified
    if log_file:
        logger.add(log_file, level="DEBUG", rotation="10 MB", retention="1 week")

    return logger


logs = setup_logger()
