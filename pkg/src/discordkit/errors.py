"""Exception hierarchy shared by every discordkit module."""


class DiscordkitError(Exception):
    """Base class for all errors raised by discordkit."""


class InvalidParameterError(DiscordkitError, ValueError):
    """A search parameter or series violates its documented constraints."""


class SelfMatchError(DiscordkitError, ValueError):
    """A distance was requested between two overlapping windows."""


class SeriesParseError(DiscordkitError, ValueError):
    """A series file contains something other than real numbers."""

    def __init__(self, message, path=None, line=None, column=None):
        self.path = path
        self.line = line
        self.column = column
        where = []
        if path is not None:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


class CorrectnessError(DiscordkitError, RuntimeError):
    """Two exact searches disagreed. This always indicates a bug."""
