"""Exception hierarchy shared by every module."""


class LfiError(Exception):
    """Base class for all package errors."""


class NumericalError(LfiError):
    """A computation failed; the scenario CLI maps these to exit code 2."""


class NonConvergence(NumericalError):
    pass


class NotHermitian(NumericalError):
    pass


class SingularPoint(NumericalError):
    pass


class UnsupportedSource(NumericalError):
    pass


class PathThroughSource(NumericalError):
    pass


class NotGaugeEquivalent(NumericalError):
    pass


class LocalFieldMismatch(NumericalError):
    pass


class StepFailure(NumericalError):
    pass


class EvanescentInput(NumericalError):
    pass


class NoBoundState(NumericalError):
    pass


class SchemaError(LfiError):
    """Scenario validation failure at a JSON path such as ``$.params.Z``."""

    def __init__(self, path, reason):
        self.path = path
        self.reason = reason
        super().__init__(f"{path}: {reason}")
