import logging
import sys

LOG_FORMAT = "%(levelname)s:%(message)s"
VERBOSE = logging.DEBUG + 5


def add_logging_level(level_name, level_num):
    """Registers a new level: `logging.<level_name>` becomes its number and
    `logging.<level_name lower>()` logs to the root logger at that level.
    Registering the same level again is a no-op.
    """
    method_name = level_name.lower()
    if getattr(logging, level_name, None) == level_num:
        return

    def log_for_level(self, message, *args, **kwargs):
        if self.isEnabledFor(level_num):
            # pylint: disable=protected-access
            self._log(level_num, message, args, **kwargs)

    def log_to_root(message, *args, **kwargs):
        logging.log(level_num, message, *args, **kwargs)

    logging.addLevelName(level_num, level_name)
    setattr(logging, level_name, level_num)
    setattr(logging.getLoggerClass(), method_name, log_for_level)
    setattr(logging, method_name, log_to_root)


def configure_logging(level_name="warning"):
    """Root logger on stderr, so that reports on stdout stay clean"""
    add_logging_level("VERBOSE", VERBOSE)
    logging.basicConfig(format=LOG_FORMAT, level=level_name.upper(), stream=sys.stderr, force=True)
