class ParseError(ValueError):
    """Malformed polynomial text, ring file or divisor file."""


class PreconditionError(ValueError):
    """Input violates an operation's precondition (e.g. not a complete
    intersection, non-ample divisor, bad Frobenius power)."""
