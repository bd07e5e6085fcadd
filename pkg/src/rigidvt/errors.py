"""Exception hierarchy. Each class maps to a stable CLI exit code."""


class RigidityError(Exception):
    exit_code = 1


class InputError(RigidityError, ValueError):
    exit_code = 2


class ResourceError(RigidityError):
    """A configured search or size budget was exceeded."""

    exit_code = 3


class ValidationError(RigidityError):
    """A structural check on a constructed graph failed."""

    exit_code = 4

    def __init__(self, check, message=""):
        self.check = check
        super().__init__(f"{check}: {message}" if message else check)


class PropertyViolation(RigidityError, AssertionError):
    """A proven inequality did not hold; points at an engine bug."""

    exit_code = 5


class ProvenanceError(PropertyViolation):
    """A stored construction record disagrees with the graph it describes."""
