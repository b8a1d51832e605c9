"""Exception types shared across the package.

Plain ``ValueError`` is used for domain errors on individual values;
these classes mark problems with a whole configuration or with how the
command line was invoked, so the CLI can map them to distinct exit
codes.
"""


class ConfigurationError(Exception):
    """A scenario or derived setup is internally inconsistent."""


class UsageError(Exception):
    """The command line was invoked incorrectly."""
