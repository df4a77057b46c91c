"""Exception types shared across the package.

Dimension mismatches and invalid parameters raise plain ``ValueError``;
the classes below mark failures that callers may want to handle
separately from bad arguments.
"""


class DegenerateFitError(RuntimeError):
    """No usable solution exists on the whole regularization grid."""


class NumericalDivergenceError(RuntimeError):
    """An iterative solver produced a non-finite value.

    Carries the iteration index at which the divergence was detected.
    """

    def __init__(self, message: str, iteration: int):
        super().__init__(f"{message} (iteration {iteration})")
        self.iteration = iteration


class SvmlightParseError(ValueError):
    """A dataset file could not be parsed; reports path and line number."""

    def __init__(self, path: str, line_no: int, reason: str):
        super().__init__(f"{path}:{line_no}: {reason}")
        self.path = path
        self.line_no = line_no
