"""Exception hierarchy shared by every module."""


class IdealFlowError(Exception):
    """Base class for all library errors."""


class DimensionError(IdealFlowError, ValueError):
    pass


class DomainError(IdealFlowError, TypeError):
    """Scalar-domain mismatch, or a value outside an operation's domain."""


class PreconditionError(IdealFlowError, ValueError):
    pass


class NotPremagicError(PreconditionError):
    pass


class DegenerateError(IdealFlowError, ValueError):
    """All-zero input where a nonzero entry is required."""


class DanglingNodeError(IdealFlowError, ValueError):
    def __init__(self, node, message=None):
        self.node = node
        super().__init__(message or f"node {node} has no outgoing flow")


class NotConservingError(IdealFlowError, ValueError):
    def __init__(self, node, deviation, message=None):
        self.node = node
        self.deviation = deviation
        super().__init__(
            message or f"throughputs are not conserved: worst node {node}, deviation {deviation}"
        )


class ReducibleError(IdealFlowError, ValueError):
    def __init__(self, components, message=None):
        self.components = components
        super().__init__(
            message or f"network is not strongly connected: components {components}"
        )


class ConvergenceError(IdealFlowError, RuntimeError):
    def __init__(self, message, residual):
        self.residual = residual
        super().__init__(f"{message} (last residual {residual})")


class GraphError(IdealFlowError, ValueError):
    pass


class MatrixParseError(IdealFlowError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class SingularMatrixError(IdealFlowError, ZeroDivisionError):
    pass
