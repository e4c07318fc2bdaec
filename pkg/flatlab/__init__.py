__version__ = "0.1.dev0"


class FlatlabError(Exception):
    """Base class of all errors raised by flatlab."""
