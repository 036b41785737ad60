from .add_logging_level import add_logging_level
from .add_logging_level import configure_logging
