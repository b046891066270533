"""Exception types shared across the package.

Two failure modes get dedicated classes so callers (and the CLI) can map
them to distinct exit codes.  Everything else raises plain ValueError or
ArithmeticError from the site that noticed the problem.
"""


class PreconditionError(ValueError):
    """An operation was invoked on data that violates its contract.

    Examples: torsion of a complex whose boundary maps do not square to
    zero, inverting a series whose leading coefficient is not a unit,
    comparing truncations over different rings.
    """


class FixtureError(ValueError):
    """Fixture data failed to parse or validate.

    ``location`` optionally names the offending file or JSON path so CLI
    error messages can point at it.
    """

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)
