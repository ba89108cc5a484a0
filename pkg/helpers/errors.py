class RxnIdentError(Exception):
    """Base class of every error rxnident raises on purpose."""


class NetworkError(RxnIdentError):
    pass


class AlignmentError(RxnIdentError):
    pass


class ParseError(RxnIdentError):

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        location = f"line {line}, column {column}: " if line else ""
        super().__init__(f"{location}{message}")


class WitnessError(RxnIdentError):
    """A witness or certificate failed exact re-validation. Never expected; always a bug."""


class NotPSDError(RxnIdentError):
    pass


class SimulationError(RxnIdentError):
    pass


class ConfigError(RxnIdentError):
    pass
