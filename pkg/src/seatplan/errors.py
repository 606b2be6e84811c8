"""Exception types shared across the package."""


class SeatingError(Exception):
    """Base class for all errors raised by seatplan."""


class InvalidInputError(SeatingError):
    """Malformed or inconsistent input: bad ids, parse errors, bad shapes."""


class InfeasibleError(SeatingError):
    """No valid seating exists, e.g. capacities sum below the guest count."""


class InternalInvariantError(SeatingError):
    """A should-never-happen condition; indicates a bug rather than bad input."""
