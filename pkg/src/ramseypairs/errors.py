"""Exception hierarchy shared by all modules."""


class RamseyPairsError(Exception):
    pass


class DegenerateInputError(RamseyPairsError, ValueError):
    pass


class InvalidPairError(RamseyPairsError, ValueError):
    pass


class InvalidSizeError(RamseyPairsError, ValueError):
    pass


class ParseError(RamseyPairsError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(RamseyPairsError, ValueError):
    """A lemma was invoked outside its hypotheses.

    ``evidence`` optionally carries the object proving the violation
    (e.g. an embedding found in a host that was supposed to be copy-free).
    """

    def __init__(self, message: str, evidence=None):
        super().__init__(message)
        self.evidence = evidence


class DeclaredFailure(RamseyPairsError, RuntimeError):
    """A constructive step could not produce any verified outcome."""

    def __init__(self, message: str, trace=None):
        super().__init__(message)
        self.trace = trace


class ResourceLimitError(RamseyPairsError, RuntimeError):
    pass
