"""Exception hierarchy shared by every module of the package."""


class PeriodicRigidityError(Exception):
    """Base class for all errors raised by this package."""


class StructureError(PeriodicRigidityError, ValueError):
    """Malformed graph data or mismatched base graphs."""


class InvalidWalkError(PeriodicRigidityError, ValueError):
    pass


class ConnectivityError(PeriodicRigidityError, ValueError):
    pass


class TreeError(PeriodicRigidityError, ValueError):
    """The supplied edge set is not a spanning tree."""


class SingularLatticeError(PeriodicRigidityError, ValueError):
    pass


class DegeneratePositionError(PeriodicRigidityError, ValueError):
    """Two vertices sit at the same point of the torus."""


class DomainError(PeriodicRigidityError, ValueError):
    pass


class NeedsBruteForceError(PeriodicRigidityError):
    """A brute-force enumeration was refused because the input exceeds a size gate."""

    def __init__(self, message, gate):
        super().__init__(message)
        self.gate = gate


class ProjectionError(PeriodicRigidityError, ValueError):
    pass


class ParseError(PeriodicRigidityError, ValueError):
    """Syntax or validation failure in an ``.orbit`` document."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
        self.message = message
