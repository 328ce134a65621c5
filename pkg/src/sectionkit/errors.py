"""Exception types shared across the package."""


class SectionKitError(Exception):
    """Base class for all errors raised by this package."""


class DegreeMismatch(SectionKitError, ValueError):
    """Operands act on different point sets."""


class InvalidPermutation(SectionKitError, ValueError):
    """Image sequence is not a bijection, or a cycle is malformed."""


class InvalidSpec(SectionKitError, ValueError):
    """Parameters do not describe a valid metacyclic target."""


class NotASubgroup(SectionKitError, ValueError):
    """A group that was required to be contained in another is not."""


class NotNormal(SectionKitError, ValueError):
    """A subgroup that was required to be normal is not."""


class CapExceeded(SectionKitError, RuntimeError):
    """A configured size limit would be exceeded; refusing to continue."""


class ConfigError(SectionKitError, ValueError):
    """A section configuration violates its construction invariants."""


class InternalCheckError(SectionKitError, RuntimeError):
    """An internal consistency assertion failed; indicates a bug upstream."""


class FormatError(SectionKitError, ValueError):
    """A text file could not be parsed."""

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", col {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column
