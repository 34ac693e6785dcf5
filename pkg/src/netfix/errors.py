"""Exception hierarchy shared by the library and the command line."""


class NetfixError(Exception):
    """Base class for all errors raised by netfix."""


class InputError(NetfixError, ValueError):
    """Malformed input: bad file syntax, out-of-range values, violated preconditions."""


class CapExceeded(NetfixError):
    """An exact computation would exceed its configured size cap."""
